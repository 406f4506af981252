//! Lucky and unlucky cars: expected unlucky counts on the circle and on the
//! one-way street, the generating polynomial behind OEIS A220884, the
//! weighted Pascal triangle, and the classical lucky-car generating function.
//!
//! On the circle with `n + 1` spots car `i` finds `i - 1` occupied spots no
//! matter how earlier coins fell, so every count here is independent of `p`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::enumerate::{explore, for_each_vector, par_fold_vectors, BranchTally, EnumCaps};
use crate::error::{Error, Result};
use crate::poly::PolyP;
use crate::protocol::Street;

/// Integers serialize as JSON numbers when they fit in `u64`, else as decimal strings.
mod serde_big {
    use super::*;

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(u64),
        Str(String),
    }

    fn to_repr(v: &BigUint) -> serde_json::Value {
        match v.to_u64() {
            Some(x) => x.into(),
            None => v.to_string().into(),
        }
    }

    fn from_repr<E: serde::de::Error>(r: Repr) -> std::result::Result<BigUint, E> {
        match r {
            Repr::Num(x) => Ok(BigUint::from(x)),
            Repr::Str(s) => s.parse().map_err(|_| E::custom(format!("bad integer {s:?}"))),
        }
    }

    pub fn serialize_rows<S: Serializer>(rows: &[Vec<BigUint>], s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<Vec<serde_json::Value>> = rows.iter().map(|r| r.iter().map(to_repr).collect()).collect();
        v.serialize(s)
    }

    pub fn deserialize_rows<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<BigUint>>, D::Error> {
        let raw = Vec::<Vec<Repr>>::deserialize(d)?;
        raw.into_iter()
            .map(|r| r.into_iter().map(from_repr).collect())
            .collect()
    }

    pub fn serialize_vec<S: Serializer>(v: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(to_repr).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize_vec<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigUint>, D::Error> {
        Vec::<Repr>::deserialize(d)?.into_iter().map(from_repr).collect()
    }
}

/// Lower-triangular table of nonnegative integers. Rows may have any length.
/// Serializes to JSON as a bare array of arrays.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TriangleTable {
    #[serde(serialize_with = "serde_big::serialize_rows", deserialize_with = "serde_big::deserialize_rows")]
    rows: Vec<Vec<BigUint>>,
}

impl TriangleTable {
    pub fn new(rows: Vec<Vec<BigUint>>) -> Self {
        TriangleTable { rows }
    }

    pub fn from_u64_rows(rows: &[&[u64]]) -> Self {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| BigUint::from(x)).collect()).collect())
    }

    pub fn rows(&self) -> &[Vec<BigUint>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[BigUint] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, k: usize) -> Option<&BigUint> {
        self.rows.get(i).and_then(|r| r.get(k))
    }

    pub fn row_sum(&self, i: usize) -> BigUint {
        self.rows[i].iter().sum()
    }

    /// Header `row,k0,k1,...`; the first field is the index of the row as
    /// stored, shorter rows are padded with empty fields.
    pub fn to_csv(&self) -> Result<String> {
        self.to_csv_from(0)
    }

    /// Like [`to_csv`](Self::to_csv) but numbering rows from `first`.
    pub fn to_csv_from(&self, first: usize) -> Result<String> {
        let width = self.rows.iter().map(Vec::len).max().unwrap_or(0);
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["row".to_string()];
        header.extend((0..width).map(|k| format!("k{k}")));
        w.write_record(&header)?;
        for (i, row) in self.rows.iter().enumerate() {
            let mut rec = vec![(first + i).to_string()];
            rec.extend(row.iter().map(BigUint::to_string));
            rec.resize(width + 1, String::new());
            w.write_record(&rec)?;
        }
        crate::poly::csv_string(w)
    }

    /// Parses [`to_csv`](Self::to_csv) output; empty fields end a row.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let mut rows = Vec::new();
        for rec in r.records() {
            let rec = rec?;
            let row = rec
                .iter()
                .skip(1)
                .take_while(|f| !f.is_empty())
                .map(|f| f.parse().map_err(|_| Error::Parse(format!("bad entry {f:?}"))))
                .collect::<Result<Vec<BigUint>>>()?;
            rows.push(row);
        }
        Ok(TriangleTable { rows })
    }
}

impl fmt::Display for TriangleTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(BigUint::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Polynomial in `q` with nonnegative integer coefficients, `coeffs[k]` on `q^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyQ {
    #[serde(serialize_with = "serde_big::serialize_vec", deserialize_with = "serde_big::deserialize_vec")]
    coeffs: Vec<BigUint>,
}

impl PolyQ {
    pub fn new(mut coeffs: Vec<BigUint>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn from_u64(coeffs: &[u64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::new(vec![BigUint::one()])
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigUint {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Multiplies by the linear factor `c0 + c1 q`.
    pub fn mul_linear(&self, c0: &BigUint, c1: &BigUint) -> Self {
        let mut out = vec![BigUint::zero(); self.coeffs.len() + 1];
        for (k, a) in self.coeffs.iter().enumerate() {
            out[k] += a * c0;
            out[k + 1] += a * c1;
        }
        Self::new(out)
    }

    pub fn eval(&self, q: &BigUint) -> BigUint {
        self.coeffs.iter().rev().fold(BigUint::zero(), |acc, c| acc * q + c)
    }
}

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coef = if c.is_one() && k > 0 { String::new() } else { c.to_string() };
            terms.push(match k {
                0 => coef,
                1 => format!("{coef}q"),
                _ => format!("{coef}q^{k}"),
            });
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// `e_0..e_len` of the weights, by the usual one-weight-at-a-time recurrence.
fn elementary_symmetric(weights: &[BigRational]) -> Vec<BigRational> {
    let mut e = vec![BigRational::zero(); weights.len() + 1];
    e[0] = BigRational::one();
    for (done, w) in weights.iter().enumerate() {
        for k in (1..=done + 1).rev() {
            let add = &e[k - 1] * w;
            e[k] += add;
        }
    }
    e
}

fn integral(r: BigRational) -> BigUint {
    assert!(r.is_integer(), "expected an integer, got {r}");
    r.to_integer().to_biguint().expect("nonnegative count")
}

/// `n! e_k(w_2, ..., w_n)` with `w_i = (i-1)/(spots - (i-1))`, for `k = 0..n-1`.
fn unlucky_row(n: usize, spots: usize) -> Vec<BigUint> {
    let weights: Vec<BigRational> = (2..=n)
        .map(|i| BigRational::new((i - 1).into(), (spots - (i - 1)).into()))
        .collect();
    let nf = BigRational::from_integer(factorial(n).into());
    elementary_symmetric(&weights)
        .into_iter()
        .map(|e| integral(e * &nf))
        .collect()
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if n == 0 || k >= n {
        return Err(Error::InvalidArgument(format!("need 0 <= k < n, got n={n}, k={k}")));
    }
    Ok(())
}

/// `U_n(k)`, the expected number of vectors in `[n+1]^n` with first preference
/// 1 and exactly `k` unlucky cars on the circle with `n + 1` spots.
pub fn unlucky_expected_circular(n: usize, k: usize) -> Result<BigUint> {
    check_nk(n, k)?;
    Ok(unlucky_row(n, n + 1).swap_remove(k))
}

/// `U_n(0..n-1)`; sums to `(n+1)^(n-1)`.
pub fn unlucky_expected_circular_row(n: usize) -> Result<Vec<BigUint>> {
    check_nk(n, 0)?;
    Ok(unlucky_row(n, n + 1))
}

/// The one-way count with `n` spots and a free first preference.
pub fn unlucky_expected_linear(n: usize, k: usize) -> Result<BigUint> {
    check_nk(n, k)?;
    Ok(unlucky_row(n, n).swap_remove(k))
}

/// One-way counts for `k = 0..n-1`; sums to `n^n`.
pub fn unlucky_expected_linear_row(n: usize) -> Result<Vec<BigUint>> {
    check_nk(n, 0)?;
    Ok(unlucky_row(n, n))
}

/// `Q_n(q) = prod_{k=2}^n [(n+1-k) q + k]`.
pub fn q_generating_polynomial(n: usize) -> Result<PolyQ> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    Ok((2..=n).fold(PolyQ::one(), |acc, k| {
        acc.mul_linear(&BigUint::from(k), &BigUint::from(n + 1 - k))
    }))
}

/// Rows `0..=rows` of `T(i,k) = a(i) T(i-1,k) + b(i) T(i-1,k-1)` starting from
/// the given row; row `i` has `first.len() + i - start` entries.
pub fn two_weight_triangle<W>(start: usize, first: Vec<BigUint>, last: usize, weights: W) -> Vec<Vec<BigUint>>
where
    W: Fn(usize) -> (BigUint, BigUint),
{
    let mut rows = vec![first];
    for i in start + 1..=last {
        let (a, b) = weights(i);
        let prev = rows.last().expect("seeded");
        let mut row = vec![BigUint::zero(); prev.len() + 1];
        for (k, v) in prev.iter().enumerate() {
            row[k] += &a * v;
            row[k + 1] += &b * v;
        }
        rows.push(row);
    }
    rows
}

/// Pascal's triangle, rows `0..=n`.
pub fn pascal_rows(n: usize) -> TriangleTable {
    let one = BigUint::one;
    TriangleTable::new(two_weight_triangle(0, vec![one()], n, |_| (one(), one())))
}

/// The weights `((n+1) - (i-1), i-1)` of row `i` of the weighted Pascal triangle.
pub fn weighted_pascal_weights(n: usize, i: usize) -> (BigUint, BigUint) {
    (BigUint::from(n + 2 - i), BigUint::from(i - 1))
}

/// `E_n(i,k)` for `i = 0..=n`, `k = 0..=i`. Row 0 is the single entry 0 and
/// the recurrence is anchored at `E_n(1,0) = 1`.
pub fn weighted_pascal(n: usize) -> Result<TriangleTable> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let mut rows = vec![vec![BigUint::zero()]];
    rows.extend(two_weight_triangle(1, vec![BigUint::one(), BigUint::zero()], n, |i| {
        weighted_pascal_weights(n, i)
    }));
    Ok(TriangleTable::new(rows))
}

/// Rows `0..=max_i`: row `i` lists the coefficients of `Q_i(q)` followed by a
/// trailing zero (row 0 is just `1`).
pub fn a220884_rows(max_i: usize) -> TriangleTable {
    let mut rows = vec![vec![BigUint::one()]];
    for i in 1..=max_i {
        let q = q_generating_polynomial(i).expect("i >= 1");
        let mut row: Vec<BigUint> = (0..i).map(|k| q.coeff(k)).collect();
        row.push(BigUint::zero());
        rows.push(row);
    }
    TriangleTable::new(rows)
}

/// `q prod_{i=1}^{n-1} [i + (n-i+1) q]`, counting classical parking functions
/// of length `n` by their lucky cars.
pub fn classical_lucky_generating(n: usize) -> Result<PolyQ> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let start = PolyQ::new(vec![BigUint::zero(), BigUint::one()]);
    Ok((1..n).fold(start, |acc, i| {
        acc.mul_linear(&BigUint::from(i), &BigUint::from(n - i + 1))
    }))
}

/// `sum q^{lucky(alpha)}` over classical parking functions of length `n`,
/// by enumerating `[n]^n` and parking with every coin Heads.
pub fn classical_lucky_bruteforce(n: usize) -> Result<PolyQ> {
    classical_lucky_bruteforce_with(n, &EnumCaps::default())
}

pub fn classical_lucky_bruteforce_with(n: usize, caps: &EnumCaps) -> Result<PolyQ> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    caps.check_space("preference vectors [n]^n", n, n, caps.max_vectors)?;
    let street = Street::linear(n)?;
    let counts = par_fold_vectors(
        n,
        n,
        || vec![0u64; n + 1],
        |acc, v| {
            let coins = std::iter::repeat(crate::protocol::Coin::Heads);
            let r = crate::protocol::run_raw(street, v, coins).expect("coins never run out");
            if r.success {
                acc[n - r.unlucky.len()] += 1;
            }
        },
        |a, b| a.into_iter().zip(b).map(|(x, y)| x + y).collect(),
    );
    Ok(PolyQ::new(counts.into_iter().map(BigUint::from).collect()))
}

/// Enumerates vectors of length `cars` on a circle of `spots` spots (first
/// preference 1 when `fixed_first`) and sums branch weights by unlucky count.
fn unlucky_counts_on_circle(
    spots: usize,
    cars: usize,
    fixed_first: bool,
    caps: &EnumCaps,
) -> Result<BTreeMap<usize, PolyP>> {
    let free = if fixed_first { cars - 1 } else { cars };
    caps.check_space("circular partial vectors", spots, free, caps.max_circular_vectors)?;
    caps.check_cars(cars)?;
    let street = Street::circular(spots)?;
    let fold = |acc: &mut Vec<BranchTally>, v: &[usize]| {
        explore(street, v, &mut |b| acc[b.unlucky as usize].add(b.heads, b.tails));
    };
    let fresh = || vec![BranchTally::new(cars); cars];
    let tallies = if fixed_first {
        let mut acc = fresh();
        for_each_vector(spots, cars, Some(1), |v| fold(&mut acc, v));
        acc
    } else {
        par_fold_vectors(spots, cars, fresh, fold, |a, b| {
            a.into_iter().zip(b).map(|(x, y)| x.merge(y)).collect()
        })
    };
    Ok(tallies
        .iter()
        .enumerate()
        .map(|(k, t)| (k, t.to_poly()))
        .collect())
}

/// Expected number of partial vectors in `[n+1]^i` with exactly `k` unlucky
/// cars on the circle with `n + 1` spots, as a polynomial in `p`, for every
/// `k = 0..i-1`. With `fixed_first` the leading preference is spot 1 and the
/// values are `E_n(i,k)`; otherwise they are `(n+1) E_n(i,k)`.
pub fn unlucky_distribution_bruteforce(n: usize, i: usize, fixed_first: bool) -> Result<BTreeMap<usize, PolyP>> {
    unlucky_distribution_bruteforce_with(n, i, fixed_first, &EnumCaps::default())
}

pub fn unlucky_distribution_bruteforce_with(
    n: usize,
    i: usize,
    fixed_first: bool,
    caps: &EnumCaps,
) -> Result<BTreeMap<usize, PolyP>> {
    if n == 0 || i == 0 || i > n {
        return Err(Error::InvalidArgument(format!("need 1 <= i <= n, got n={n}, i={i}")));
    }
    unlucky_counts_on_circle(n + 1, i, fixed_first, caps)
}

/// Oracle for the one-way counts: `n` cars with free preferences in `[n]`
/// on a circle of exactly `n` spots, so that car `i` always meets `i - 1`
/// occupied spots, as the one-way count assumes.
pub fn unlucky_one_way_bruteforce(n: usize) -> Result<BTreeMap<usize, PolyP>> {
    unlucky_one_way_bruteforce_with(n, &EnumCaps::default())
}

pub fn unlucky_one_way_bruteforce_with(n: usize, caps: &EnumCaps) -> Result<BTreeMap<usize, PolyP>> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if n == 1 {
        return Ok(BTreeMap::from([(0, PolyP::one())]));
    }
    unlucky_counts_on_circle(n, n, false, caps)
}
