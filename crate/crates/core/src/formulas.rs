//! Closed forms for the law of the last car's preference, Abel's generalised
//! binomial sums, total-variation comparisons with the uniform law, and the
//! Poisson(1) Edgeworth check.
//!
//! Everything except the large-`n` mean approximation and the Edgeworth term
//! is exact rational arithmetic.

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use crate::dist::{tv_distance, RationalDist};
use crate::error::{Error, Result};
use crate::rational::{check_probability, format_rational, int, rat_pow, serde_str, to_f64, tree_power};

/// Parameters of `A_n(x, y; p, q) = sum_s C(n,s) (x+s)^(s+p) (y+n-s)^(n-s+q)`.
/// The exponent offsets are unrelated to the forward probability.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelParams {
    pub x: BigRational,
    pub y: BigRational,
    pub p_exp: i64,
    pub q_exp: i64,
}

impl AbelParams {
    pub fn new(x: BigRational, y: BigRational, p_exp: i64, q_exp: i64) -> Self {
        AbelParams { x, y, p_exp, q_exp }
    }

    pub fn ints(x: i64, y: i64, p_exp: i64, q_exp: i64) -> Self {
        Self::new(int(x), int(y), p_exp, q_exp)
    }
}

pub fn abel_sum(n: u64, params: &AbelParams) -> Result<BigRational> {
    let mut total = BigRational::zero();
    let n_big = BigInt::from(n);
    for s in 0..=n {
        let c = binomial(n_big.clone(), BigInt::from(s));
        let left = rat_pow(&(&params.x + int(s as i64)), s as i64 + params.p_exp)?;
        let right = rat_pow(&(&params.y + int((n - s) as i64)), (n - s) as i64 + params.q_exp)?;
        total += BigRational::from_integer(c) * left * right;
    }
    Ok(total)
}

/// The four exponent pairs with known closed forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbelSpecialCase {
    /// `A_n(x,y;-1,-1) = (1/x + 1/y) (x+y+n)^(n-1)`
    NegOneNegOne,
    /// `A_n(x,y;-1,0) = (1/x) (x+y+n)^n`
    NegOneZero,
    /// `A_n(x,y;-1,1) = (1/x) sum_s C(n,s) (x+y+n)^s (y+n-s) (n-s)!`
    NegOneOne,
    /// `A_n(x,y;0,0) = sum_s C(n,s) (x+y+n)^s (n-s)!`
    ZeroZero,
}

impl AbelSpecialCase {
    pub const ALL: [AbelSpecialCase; 4] = [
        AbelSpecialCase::NegOneNegOne,
        AbelSpecialCase::NegOneZero,
        AbelSpecialCase::NegOneOne,
        AbelSpecialCase::ZeroZero,
    ];

    pub fn exponents(self) -> (i64, i64) {
        match self {
            AbelSpecialCase::NegOneNegOne => (-1, -1),
            AbelSpecialCase::NegOneZero => (-1, 0),
            AbelSpecialCase::NegOneOne => (-1, 1),
            AbelSpecialCase::ZeroZero => (0, 0),
        }
    }

    pub fn closed_form(self, n: u64, x: &BigRational, y: &BigRational) -> Result<BigRational> {
        let total = x + y + int(n as i64);
        let n_big = BigInt::from(n);
        let factorial = |k: u64| BigRational::from_integer((1..=k).map(BigInt::from).product());
        let choose = |s: u64| BigRational::from_integer(binomial(n_big.clone(), BigInt::from(s)));
        Ok(match self {
            AbelSpecialCase::NegOneNegOne => {
                (rat_pow(x, -1)? + rat_pow(y, -1)?) * rat_pow(&total, n as i64 - 1)?
            }
            AbelSpecialCase::NegOneZero => rat_pow(x, -1)? * rat_pow(&total, n as i64)?,
            AbelSpecialCase::NegOneOne => {
                let sum: BigRational = (0..=n)
                    .map(|s| {
                        choose(s)
                            * num_traits::pow(total.clone(), s as usize)
                            * (y + int((n - s) as i64))
                            * factorial(n - s)
                    })
                    .sum();
                rat_pow(x, -1)? * sum
            }
            AbelSpecialCase::ZeroZero => (0..=n)
                .map(|s| choose(s) * num_traits::pow(total.clone(), s as usize) * factorial(n - s))
                .sum(),
        })
    }
}

/// One side-by-side comparison of an exact identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: BigRational,
    pub rhs: BigRational,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// The four closed forms at `(x, y)` for one `n`.
pub fn abel_special_checks(n: u64, x: &BigRational, y: &BigRational) -> Result<Vec<IdentityCheck>> {
    AbelSpecialCase::ALL
        .iter()
        .map(|case| {
            let (p_exp, q_exp) = case.exponents();
            Ok(IdentityCheck {
                name: format!("A_{n}(x,y;{p_exp},{q_exp}) closed form"),
                lhs: abel_sum(n, &AbelParams::new(x.clone(), y.clone(), p_exp, q_exp))?,
                rhs: case.closed_form(n, x, y)?,
            })
        })
        .collect()
}

/// Symmetry, the two-term recurrence and the convolution recurrence at `params`.
/// The two-term recurrence is skipped at `n = 0`.
pub fn abel_recurrence_checks(n: u64, params: &AbelParams) -> Result<Vec<IdentityCheck>> {
    let AbelParams { x, y, p_exp, q_exp } = params;
    let lhs = abel_sum(n, params)?;
    let mut out = vec![IdentityCheck {
        name: "A_n(x,y;p,q) = A_n(y,x;q,p)".into(),
        lhs: lhs.clone(),
        rhs: abel_sum(n, &AbelParams::new(y.clone(), x.clone(), *q_exp, *p_exp))?,
    }];
    if n > 0 {
        let one = int(1);
        let a = abel_sum(n - 1, &AbelParams::new(x.clone(), y + &one, *p_exp, q_exp + 1))?;
        let b = abel_sum(n - 1, &AbelParams::new(x + &one, y.clone(), p_exp + 1, *q_exp))?;
        out.push(IdentityCheck {
            name: "A_n = A_{n-1}(x,y+1;p,q+1) + A_{n-1}(x+1,y;p+1,q)".into(),
            lhs: lhs.clone(),
            rhs: a + b,
        });
    }
    let mut conv = BigRational::zero();
    let mut fall = BigInt::one(); // C(n,s) s! = n!/(n-s)!
    for s in 0..=n {
        if s > 0 {
            fall *= BigInt::from(n - s + 1);
        }
        let xs = x + int(s as i64);
        let inner = abel_sum(n - s, &AbelParams::new(xs.clone(), y.clone(), p_exp - 1, *q_exp))?;
        conv += BigRational::from_integer(fall.clone()) * xs * inner;
    }
    out.push(IdentityCheck {
        name: "A_n = sum_s C(n,s) s! (x+s) A_{n-s}(x+s,y;p-1,q)".into(),
        lhs,
        rhs: conv,
    });
    Ok(out)
}

/// Integer pieces of the last-preference law: `terms[s] =
/// C(n-1, s) (n-s)^(n-s-2) (s+1)^(s-1)` and the normaliser `(n+1)^(n-1)`.
struct LastPrefTerms {
    n: usize,
    // prefix[k] = terms[0] + ... + terms[k-1]
    prefix: Vec<BigInt>,
    norm: BigInt,
}

impl LastPrefTerms {
    fn new(n: usize) -> Self {
        // powers g(m) = m^(m-2), m = 1..=n
        let trees: Vec<BigInt> = (1..=n as u64).map(tree_power).collect();
        let g = |m: usize| &trees[m - 1];
        let mut terms = Vec::with_capacity(n);
        let mut choose = BigInt::one();
        for s in 0..n {
            if s > 0 {
                choose = choose * BigInt::from(n - s) / BigInt::from(s);
            }
            terms.push(&choose * g(n - s) * g(s + 1));
        }
        let mut prefix = Vec::with_capacity(n + 1);
        let mut acc = BigInt::zero();
        prefix.push(acc.clone());
        for t in &terms {
            acc += t;
            prefix.push(acc.clone());
        }
        let norm = num_traits::pow(BigInt::from(n + 1), n - 1);
        LastPrefTerms { n, prefix, norm }
    }

    /// `b (n+1)^(n-1) [2/(n+1) - Q(j)]` for `p = a/b`, i.e. `a hi_j + (b-a) lo_j`.
    fn deficit(&self, j: usize, a: &BigInt, b: &BigInt) -> BigInt {
        let n = self.n;
        let lo = &self.prefix[n - j];
        let hi = &self.prefix[n] - &self.prefix[n - j + 1];
        a * hi + (b - a) * lo
    }
}

fn split(p: &BigRational) -> (BigInt, BigInt) {
    (p.numer().clone(), p.denom().clone())
}

fn require_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    Ok(())
}

/// `Q_{n,p}(j) = P(a_n = j | all n cars park)`:
/// `2/(n+1) - [p * sum_{s=n-j+1}^{n-1} T_s + (1-p) * sum_{s=0}^{n-j-1} T_s] / (n+1)^(n-1)`.
pub fn last_pref_distribution(n: usize, p: &BigRational) -> Result<RationalDist> {
    require_n(n)?;
    check_probability(p)?;
    let terms = LastPrefTerms::new(n);
    let (a, b) = split(p);
    let den = BigInt::from(n + 1) * &b * &terms.norm;
    let two_bd = BigInt::from(2) * &b * &terms.norm;
    let mass = (1..=n)
        .map(|j| {
            let num = &two_bd - BigInt::from(n + 1) * terms.deficit(j, &a, &b);
            BigRational::new(num, den.clone())
        })
        .collect();
    RationalDist::new(mass)
}

/// The `p = 1/2` law in closed form:
/// `1/(n+1) + C(n-1, n-j) j^(j-2) (n-j+1)^(n-j-1) / (2 (n+1)^(n-1))`.
pub fn last_pref_distribution_half(n: usize) -> Result<RationalDist> {
    require_n(n)?;
    let norm = num_traits::pow(BigInt::from(n + 1), n - 1);
    let base = BigRational::new(BigInt::one(), BigInt::from(n + 1));
    let nm1 = BigInt::from(n - 1);
    let mass = (1..=n)
        .map(|j| {
            let c = binomial(nm1.clone(), BigInt::from(n - j));
            let top = c * tree_power(j as u64) * tree_power((n - j + 1) as u64);
            &base + BigRational::new(top, BigInt::from(2) * &norm)
        })
        .collect();
    RationalDist::new(mass)
}

/// `E(a_n | all park) = sum_j j Q_{n,p}(j)`, exactly.
pub fn last_pref_mean_exact(n: usize, p: &BigRational) -> Result<BigRational> {
    require_n(n)?;
    check_probability(p)?;
    let terms = LastPrefTerms::new(n);
    let (a, b) = split(p);
    // sum_j j * 2/(n+1) = n
    let weighted: BigInt = (1..=n).map(|j| BigInt::from(j) * terms.deficit(j, &a, &b)).sum();
    Ok(int(n as i64) - BigRational::new(weighted, b * terms.norm))
}

/// The same mean through Abel sums at `x = y = 1`:
/// `n - [(1-p) A(-1,1) + p A(0,0) + (pn+p-1) A(-1,0) - p(n+1) A(-1,-1)] / (2 (n+1)^(n-1))`
/// with every `A = A_{n-1}(1,1;.,.)`. Independent of [`last_pref_mean_exact`].
pub fn last_pref_mean_abel(n: usize, p: &BigRational) -> Result<BigRational> {
    require_n(n)?;
    check_probability(p)?;
    let m = (n - 1) as u64;
    let a = |pe, qe| abel_sum(m, &AbelParams::ints(1, 1, pe, qe));
    let nn = int(n as i64);
    let one = int(1);
    let bracket = (&one - p) * a(-1, 1)? + p * a(0, 0)? + (p * &nn + p - &one) * a(-1, 0)?
        - p * (&nn + &one) * a(-1, -1)?;
    let norm = int(2) * rat_pow(&(&nn + &one), n as i64 - 1)?;
    Ok(nn - bracket / norm)
}

/// Large-`n` approximation `(n+1)/2 - (2p-1) [sqrt(2 pi)/4 sqrt(n) - 7/6]`.
pub fn last_pref_mean_asymptotic(n: usize, p: f64) -> f64 {
    let n = n as f64;
    (n + 1.0) / 2.0 - (2.0 * p - 1.0) * ((2.0 * std::f64::consts::PI).sqrt() / 4.0 * n.sqrt() - 7.0 / 6.0)
}

/// `Q_{n,0}`, `Q_{n,1}` and `Q_{n,p}`, checked against `Q_{n,p} = p Q_{n,1} + (1-p) Q_{n,0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convexity {
    pub backward: RationalDist,
    pub forward: RationalDist,
    pub mixed: RationalDist,
}

pub fn convexity_decompose(n: usize, p: &BigRational) -> Result<Convexity> {
    let backward = last_pref_distribution(n, &BigRational::zero())?;
    let forward = last_pref_distribution(n, &BigRational::one())?;
    let mixed = last_pref_distribution(n, p)?;
    let combo = forward.mix(&backward, p)?;
    if combo != mixed {
        return Err(Error::IdentityViolated(format!(
            "Q(n={n}, p={}) differs from p Q1 + (1-p) Q0",
            format_rational(p)
        )));
    }
    Ok(Convexity { backward, forward, mixed })
}

/// Exact distance of `Q_{n,p}` from the uniform law on `[n]`.
pub fn uniform_tv(n: usize, p: &BigRational) -> Result<BigRational> {
    tv_distance(&last_pref_distribution(n, p)?, &RationalDist::uniform(n))
}

/// `|2p-1| TV(Q_{n,1}) <= TV(Q_{n,p}) <= TV(Q_{n,1})`, evaluated exactly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TvBoundsReport {
    pub n: usize,
    #[serde(with = "serde_str")]
    pub p: BigRational,
    #[serde(with = "serde_str")]
    pub tv: BigRational,
    pub tv_float: f64,
    #[serde(with = "serde_str")]
    pub lower: BigRational,
    #[serde(with = "serde_str")]
    pub upper: BigRational,
}

impl TvBoundsReport {
    /// CSV header and a single row.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "p", "tv", "tv_float", "lower", "upper"])?;
        w.write_record([
            self.n.to_string(),
            format_rational(&self.p),
            format_rational(&self.tv),
            self.tv_float.to_string(),
            format_rational(&self.lower),
            format_rational(&self.upper),
        ])?;
        crate::poly::csv_string(w)
    }
}

/// Computes the sandwich and fails if either inequality, or the symmetry
/// `TV(Q_{n,1}) = TV(Q_{n,0})`, does not hold.
pub fn tv_bounds_check(n: usize, p: &BigRational) -> Result<TvBoundsReport> {
    let c = convexity_decompose(n, p)?;
    let unif = RationalDist::uniform(n);
    let tv = tv_distance(&c.mixed, &unif)?;
    let tv1 = tv_distance(&c.forward, &unif)?;
    let tv0 = tv_distance(&c.backward, &unif)?;
    let slope = (int(2) * p - int(1)).abs();
    let lower = &slope * &tv1;
    if tv1 != tv0 {
        return Err(Error::IdentityViolated(format!(
            "TV(Q1)={} but TV(Q0)={}",
            format_rational(&tv1),
            format_rational(&tv0)
        )));
    }
    if lower > tv || tv > tv1 {
        return Err(Error::IdentityViolated(format!(
            "sandwich fails at n={n}: {} <= {} <= {}",
            format_rational(&lower),
            format_rational(&tv),
            format_rational(&tv1)
        )));
    }
    Ok(TvBoundsReport {
        n,
        p: p.clone(),
        tv_float: to_f64(&tv),
        tv,
        lower,
        upper: tv1,
    })
}

/// `(1/2) [sum_j f(j) Unif(j) - sum_j f(j) Q_{n,p}(j)]` with `f(j) = j/n`.
/// Any `|f| <= 1` gives a lower bound on the total variation distance.
pub fn tv_test_function_lb(n: usize, p: &BigRational) -> Result<BigRational> {
    let mean = last_pref_mean_exact(n, p)?;
    let nn = int(n as i64);
    let unif_term = (&nn + int(1)) / (int(2) * &nn);
    Ok((unif_term - mean / nn) / int(2))
}

/// Terms of the continuity-corrected Edgeworth expansion of the Poisson(1)
/// sum at `x = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeworthTerms {
    pub sigma: f64,
    pub mu3: f64,
    /// `Phi(0)`
    pub phi0: f64,
    /// `D(0) = floor(0) - 0 + 1/2`
    pub lattice: f64,
}

impl EdgeworthTerms {
    pub const POISSON_ONE: EdgeworthTerms = EdgeworthTerms {
        sigma: 1.0,
        mu3: 1.0,
        phi0: 0.5,
        lattice: 0.5,
    };

    /// `[mu3 / (6 sigma^3) + D(0) / sigma] / sqrt(2 pi n)`, which is `2/(3 sqrt(2 pi n))`.
    pub fn correction(&self, n: u64) -> f64 {
        (self.mu3 / (6.0 * self.sigma.powi(3)) + self.lattice / self.sigma)
            / (2.0 * std::f64::consts::PI * n as f64).sqrt()
    }

    pub fn approximation(&self, n: u64) -> f64 {
        self.phi0 + self.correction(n)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PoissonCheck {
    pub n: u64,
    /// `P(X_1 + ... + X_n <= n)` to within `2^-(PRECISION_BITS - 8)`.
    pub exact: BigRational,
    pub exact_f64: f64,
    pub edgeworth: f64,
    pub residual: f64,
}

/// Working precision of [`poisson_cdf_check`], in bits.
pub const PRECISION_BITS: u64 = 192;

/// `e^-n sum_{s<=n} n^s/s!` in high precision against the Edgeworth value.
pub fn poisson_cdf_check(n: u64) -> Result<PoissonCheck> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let exact = poisson_cdf_at_mean(n);
    let exact_f64 = to_f64(&exact);
    let edgeworth = EdgeworthTerms::POISSON_ONE.approximation(n);
    Ok(PoissonCheck {
        n,
        exact,
        exact_f64,
        edgeworth,
        residual: exact_f64 - edgeworth,
    })
}

/// `mant * 2^exp`, truncated to a fixed number of significant bits.
#[derive(Clone, Debug)]
struct Float {
    mant: BigUint,
    exp: i64,
}

impl Float {
    fn truncate(mut self, prec: u64) -> Self {
        let bits = self.mant.bits();
        if bits > prec {
            let shift = bits - prec;
            self.mant >>= shift;
            self.exp += shift as i64;
        }
        self
    }

    fn mul(&self, other: &Float, prec: u64) -> Float {
        Float {
            mant: &self.mant * &other.mant,
            exp: self.exp + other.exp,
        }
        .truncate(prec)
    }
}

/// `e^-1` from its alternating series in fixed point.
fn exp_neg_one(prec: u64) -> Float {
    let scale = BigUint::one() << prec;
    let mut term = scale.clone();
    let mut pos = scale;
    let mut neg = BigUint::zero();
    let mut k = 1u64;
    while !term.is_zero() {
        term /= k;
        if k % 2 == 1 {
            neg += &term;
        } else {
            pos += &term;
        }
        k += 1;
    }
    Float {
        mant: pos - neg,
        exp: -(prec as i64),
    }
}

fn exp_neg(n: u64, prec: u64) -> Float {
    let mut base = exp_neg_one(prec);
    let mut acc = Float { mant: BigUint::one(), exp: 0 };
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base, prec);
        }
        base = base.mul(&base, prec);
        e >>= 1;
    }
    acc
}

fn poisson_cdf_at_mean(n: u64) -> BigRational {
    let guard = 64 + 2 * (64 - n.leading_zeros() as u64);
    let prec = PRECISION_BITS + guard;
    // sum_{s<=n} n^s n!/s!  via  G_k = k G_{k-1} + n^k
    let nb = BigUint::from(n);
    let mut g = BigUint::one();
    let mut pow = BigUint::one();
    let mut fact = BigUint::one();
    for k in 1..=n {
        pow *= &nb;
        fact *= k;
        g = g * k + &pow;
    }
    let e = exp_neg(n, prec);
    let num = g * &e.mant;
    // value = num * 2^e.exp / fact
    let shift = (fact.bits() + prec).saturating_sub(num.bits());
    let q = (num << shift) / &fact;
    let exp = e.exp - shift as i64;
    let q = BigInt::from(q);
    if exp >= 0 {
        BigRational::from_integer(q << exp as usize)
    } else {
        BigRational::new(q, BigInt::one() << exp.unsigned_abs() as usize)
    }
}

/// Float view of a rational, for reports.
pub fn approx(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn masses(d: &RationalDist) -> Vec<BigRational> {
        d.masses().to_vec()
    }

    #[test]
    fn abel_small_values() {
        // direct sum: C(2,0) 1^-1 3^1 + C(2,1) 2^0 2^0 + C(2,2) 3^1 1^-1 = 3 + 2 + 3
        assert_eq!(abel_sum(2, &AbelParams::ints(1, 1, -1, -1)).unwrap(), int(8));
        assert_eq!(
            abel_sum(0, &AbelParams::new(ratio(2, 3), ratio(5, 7), -2, 3)).unwrap(),
            ratio(9, 4) * ratio(125, 343)
        );
        for n in 1..=10u64 {
            let v = abel_sum(n - 1, &AbelParams::ints(1, 1, -1, 0)).unwrap();
            assert_eq!(v, BigRational::from_integer(num_traits::pow(BigInt::from(n + 1), n as usize - 1)));
        }
        assert!(matches!(
            abel_sum(1, &AbelParams::ints(0, 1, -1, 0)),
            Err(Error::ZeroBaseNegativeExponent { .. })
        ));
    }

    #[test]
    fn three_car_law() {
        let q = last_pref_distribution(3, &ratio(1, 2)).unwrap();
        assert_eq!(masses(&q), vec![ratio(11, 32), ratio(10, 32), ratio(11, 32)]);
        assert_eq!(last_pref_distribution_half(3).unwrap(), q);
        assert_eq!(
            last_pref_distribution(1, &ratio(1, 3)).unwrap(),
            RationalDist::point_mass(1, 1)
        );
    }

    #[test]
    fn two_car_half_law() {
        // 1/3 + C(1,1) 1 2^0 / 6 and 1/3 + C(1,0) 1 1^-1 / 6
        let q = last_pref_distribution_half(2).unwrap();
        assert_eq!(masses(&q), vec![ratio(1, 2), ratio(1, 2)]);
    }

    #[test]
    fn means() {
        assert_eq!(last_pref_mean_exact(1, &ratio(1, 5)).unwrap(), int(1));
        assert_eq!(last_pref_mean_exact(7, &ratio(1, 2)).unwrap(), int(4));
        let p = ratio(2, 7);
        let s = last_pref_mean_exact(9, &p).unwrap() + last_pref_mean_exact(9, &(int(1) - &p)).unwrap();
        assert_eq!(s, int(10));
        assert_eq!(
            last_pref_mean_exact(6, &p).unwrap(),
            last_pref_distribution(6, &p).unwrap().mean()
        );
        assert_eq!(last_pref_mean_asymptotic(50, 0.5), 25.5);
        let t = last_pref_mean_asymptotic(80, 0.3) + last_pref_mean_asymptotic(80, 0.7);
        assert!((t - 81.0).abs() < 1e-12);
    }

    #[test]
    fn abel_identities_at_one() {
        for n in 0..=8 {
            for c in abel_special_checks(n, &int(1), &int(1)).unwrap() {
                assert!(c.holds(), "{} at n={n}", c.name);
            }
            for c in abel_recurrence_checks(n, &AbelParams::new(ratio(1, 2), ratio(7, 3), -1, 2)).unwrap() {
                assert!(c.holds(), "{} at n={n}", c.name);
            }
        }
    }

    #[test]
    fn mean_by_abel_sums() {
        for n in 1..=25 {
            for p in [int(0), ratio(1, 3), ratio(1, 2), int(1)] {
                assert_eq!(last_pref_mean_abel(n, &p).unwrap(), last_pref_mean_exact(n, &p).unwrap());
            }
        }
    }

    #[test]
    fn tv_against_uniform_three() {
        // (1/2)(2 |11/32 - 1/3| + |10/32 - 1/3|) = (1/2)(2/96 + 2/96)
        let tv = uniform_tv(3, &ratio(1, 2)).unwrap();
        assert_eq!(tv, ratio(1, 48));
    }

    #[test]
    fn convexity_and_symmetry() {
        let c = convexity_decompose(8, &ratio(1, 2)).unwrap();
        assert_eq!(c.forward.reversed(), c.backward);
        let c1 = convexity_decompose(5, &int(1)).unwrap();
        assert_eq!(c1.mixed, c1.forward);
    }

    #[test]
    fn sandwich_reports() {
        let r = tv_bounds_check(12, &ratio(1, 2)).unwrap();
        assert!(r.lower.is_zero());
        let r = tv_bounds_check(12, &int(1)).unwrap();
        assert_eq!(r.lower, r.tv);
        assert_eq!(r.upper, r.tv);
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.starts_with(r#"{"n":12,"p":"1/1","tv":""#));
        assert_eq!(serde_json::from_str::<TvBoundsReport>(&json).unwrap(), r);
    }

    #[test]
    fn test_function_bound() {
        assert!(tv_test_function_lb(30, &ratio(1, 2)).unwrap().is_zero());
        let lb = tv_test_function_lb(40, &int(1)).unwrap();
        assert!(lb.is_positive());
        assert!(lb <= uniform_tv(40, &int(1)).unwrap());
    }

    #[test]
    fn poisson_one() {
        let c = poisson_cdf_check(1).unwrap();
        assert!((c.exact_f64 - 2.0 * (-1f64).exp()).abs() < 1e-15);
        assert!((c.edgeworth - (0.5 + 2.0 / (3.0 * (2.0 * std::f64::consts::PI).sqrt()))).abs() < 1e-15);
        // 2/e to more than 64 fractional bits: 2 * 0.36787944117144232159552377016146...
        let scaled = &c.exact * BigRational::from_integer(BigInt::from(10).pow(30));
        assert_eq!(scaled.to_integer(), "735758882342884643191047540322".parse::<BigInt>().unwrap());
    }
}
