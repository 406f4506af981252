//! Dense univariate polynomials in the forward probability `p` with exact
//! rational coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, serde_vec};

/// `coeffs[d]` multiplies `p^d`. Trailing zeros are always trimmed, so the
/// zero polynomial has no coefficients and equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "RawPolyP")]
pub struct PolyP {
    #[serde(with = "serde_vec")]
    coeffs: Vec<BigRational>,
}

#[derive(Deserialize)]
struct RawPolyP {
    #[serde(with = "serde_vec")]
    coeffs: Vec<BigRational>,
}

impl From<RawPolyP> for PolyP {
    fn from(raw: RawPolyP) -> Self {
        PolyP::from_coeffs(raw.coeffs)
    }
}

impl PolyP {
    pub fn zero() -> Self {
        PolyP { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    /// The polynomial `p`.
    pub fn p() -> Self {
        Self::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    /// The polynomial `1 - p`.
    pub fn one_minus_p() -> Self {
        Self::from_coeffs(vec![BigRational::one(), -BigRational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyP { coeffs }
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `p^d` (zero beyond the degree).
    pub fn coeff(&self, d: usize) -> BigRational {
        self.coeffs.get(d).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// The constant value when the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<BigRational> {
        self.is_constant().then(|| self.coeff(0))
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut out = PolyP::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, p: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * p + c)
    }

    pub fn eval_f64(&self, p: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * p + crate::rational::to_f64(c))
    }

    /// The polynomial `q(p) = self(1 - p)`.
    pub fn reflect(&self) -> Self {
        let omp = PolyP::one_minus_p();
        self.coeffs.iter().rev().fold(PolyP::zero(), |acc, c| {
            &(&acc * &omp) + &PolyP::constant(c.clone())
        })
    }

    /// CSV rows `degree,numerator,denominator` with a header line.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["degree", "numerator", "denominator"])?;
        for (d, c) in self.coeffs.iter().enumerate() {
            w.write_record([d.to_string(), c.numer().to_string(), c.denom().to_string()])?;
        }
        csv_string(w)
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let mut coeffs: Vec<BigRational> = Vec::new();
        for row in r.records() {
            let row = row?;
            let field = |i: usize| row.get(i).ok_or_else(|| Error::Parse("short CSV row".into()));
            let d: usize = field(0)?
                .parse()
                .map_err(|_| Error::Parse("bad degree".into()))?;
            let num: BigInt = field(1)?
                .parse()
                .map_err(|_| Error::Parse("bad numerator".into()))?;
            let den: BigInt = field(2)?
                .parse()
                .map_err(|_| Error::Parse("bad denominator".into()))?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            if coeffs.len() <= d {
                coeffs.resize(d + 1, BigRational::zero());
            }
            coeffs[d] = BigRational::new(num, den);
        }
        Ok(Self::from_coeffs(coeffs))
    }

    /// Parses the coefficient list of the JSON form, e.g. `["0/1", "2/1", "-1/1"]`.
    pub fn from_coeff_strings<S: AsRef<str>>(coeffs: &[S]) -> Result<Self> {
        coeffs
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(Self::from_coeffs)
    }
}

pub(crate) fn csv_string(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

fn fmt_coeff_abs(c: &BigRational) -> String {
    let a = c.abs();
    if a.is_integer() {
        a.numer().to_string()
    } else {
        format!("({})", format_rational(&a))
    }
}

/// Canonical ascending-degree form, e.g. `2p - p^2` or `1 - 2p + p^2`.
impl fmt::Display for PolyP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let unit = c.abs().is_one();
            match d {
                0 => f.write_str(&fmt_coeff_abs(c))?,
                _ => {
                    if !unit {
                        f.write_str(&fmt_coeff_abs(c))?;
                    }
                    if d == 1 {
                        f.write_str("p")?;
                    } else {
                        write!(f, "p^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &PolyP {
    type Output = PolyP;
    fn add(self, rhs: &PolyP) -> PolyP {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        PolyP::from_coeffs((0..len).map(|d| self.coeff(d) + rhs.coeff(d)).collect())
    }
}

impl Add for PolyP {
    type Output = PolyP;
    fn add(self, rhs: PolyP) -> PolyP {
        &self + &rhs
    }
}

impl AddAssign<&PolyP> for PolyP {
    fn add_assign(&mut self, rhs: &PolyP) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigRational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl Neg for &PolyP {
    type Output = PolyP;
    fn neg(self) -> PolyP {
        PolyP::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &PolyP {
    type Output = PolyP;
    fn sub(self, rhs: &PolyP) -> PolyP {
        self + &(-rhs)
    }
}

impl Sub for PolyP {
    type Output = PolyP;
    fn sub(self, rhs: PolyP) -> PolyP {
        &self - &rhs
    }
}

impl Mul for &PolyP {
    type Output = PolyP;
    fn mul(self, rhs: &PolyP) -> PolyP {
        if self.is_zero() || rhs.is_zero() {
            return PolyP::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyP::from_coeffs(out)
    }
}

impl Mul for PolyP {
    type Output = PolyP;
    fn mul(self, rhs: PolyP) -> PolyP {
        &self * &rhs
    }
}

impl std::iter::Sum for PolyP {
    fn sum<I: Iterator<Item = PolyP>>(iter: I) -> PolyP {
        iter.fold(PolyP::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}
