//! Exact discrete distributions on `[n] = {1, ..., n}`.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{serde_vec, to_f64};

/// Masses are nonnegative and sum to exactly one; `mass(j)` is 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDist")]
pub struct RationalDist {
    #[serde(with = "serde_vec")]
    mass: Vec<BigRational>,
}

#[derive(Deserialize)]
struct RawDist {
    #[serde(with = "serde_vec")]
    mass: Vec<BigRational>,
}

impl TryFrom<RawDist> for RationalDist {
    type Error = Error;
    fn try_from(raw: RawDist) -> Result<Self> {
        RationalDist::new(raw.mass)
    }
}

impl RationalDist {
    pub fn new(mass: Vec<BigRational>) -> Result<Self> {
        if mass.is_empty() {
            return Err(Error::InvalidDistribution("empty support".into()));
        }
        if let Some(j) = mass.iter().position(Signed::is_negative) {
            return Err(Error::InvalidDistribution(format!("negative mass at j={}", j + 1)));
        }
        let total: BigRational = mass.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidDistribution(format!("masses sum to {total}")));
        }
        Ok(RationalDist { mass })
    }

    pub fn uniform(n: usize) -> Self {
        let m = BigRational::new(1.into(), n.into());
        RationalDist { mass: vec![m; n] }
    }

    pub fn point_mass(n: usize, j: usize) -> Self {
        let mut mass = vec![BigRational::zero(); n];
        mass[j - 1] = BigRational::one();
        RationalDist { mass }
    }

    /// Support size `n`.
    pub fn n(&self) -> usize {
        self.mass.len()
    }

    pub fn mass(&self, j: usize) -> &BigRational {
        &self.mass[j - 1]
    }

    pub fn masses(&self) -> &[BigRational] {
        &self.mass
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.mass.iter().map(to_f64).collect()
    }

    pub fn mean(&self) -> BigRational {
        self.mass
            .iter()
            .enumerate()
            .map(|(i, m)| m * BigRational::from_integer((i + 1).into()))
            .sum()
    }

    /// `j -> n + 1 - j`.
    pub fn reversed(&self) -> Self {
        let mut mass = self.mass.clone();
        mass.reverse();
        RationalDist { mass }
    }

    /// `w * self + (1 - w) * other`.
    pub fn mix(&self, other: &RationalDist, w: &BigRational) -> Result<Self> {
        check_support(self, other)?;
        let v = BigRational::one() - w;
        RationalDist::new(
            self.mass
                .iter()
                .zip(&other.mass)
                .map(|(a, b)| a * w + b * &v)
                .collect(),
        )
    }

    /// CSV rows `j,numerator,denominator,float` with a header line.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["j", "numerator", "denominator", "float"])?;
        for (i, m) in self.mass.iter().enumerate() {
            w.write_record([
                (i + 1).to_string(),
                m.numer().to_string(),
                m.denom().to_string(),
                to_f64(m).to_string(),
            ])?;
        }
        crate::poly::csv_string(w)
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let mut mass = Vec::new();
        for (i, row) in r.records().enumerate() {
            let row = row?;
            let j: usize = row.get(0).and_then(|s| s.parse().ok()).ok_or_else(|| Error::Parse("bad j".into()))?;
            if j != i + 1 {
                return Err(Error::Parse(format!("expected j={}, found {j}", i + 1)));
            }
            let num = row.get(1).and_then(|s| s.parse().ok()).ok_or_else(|| Error::Parse("bad numerator".into()))?;
            let den: num_bigint::BigInt =
                row.get(2).and_then(|s| s.parse().ok()).ok_or_else(|| Error::Parse("bad denominator".into()))?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            mass.push(BigRational::new(num, den));
        }
        RationalDist::new(mass)
    }
}

fn check_support(a: &RationalDist, b: &RationalDist) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::SupportMismatch { left: a.n(), right: b.n() });
    }
    Ok(())
}

/// `(1/2) * sum_j |P(j) - Q(j)|`, exactly.
pub fn tv_distance(p: &RationalDist, q: &RationalDist) -> Result<BigRational> {
    check_support(p, q)?;
    let l1: BigRational = p.mass.iter().zip(&q.mass).map(|(a, b)| (a - b).abs()).sum();
    Ok(l1 / BigRational::from_integer(2.into()))
}

/// Total variation between an empirical frequency vector and an exact law.
pub fn tv_distance_f64(empirical: &[f64], exact: &RationalDist) -> Result<f64> {
    if empirical.len() != exact.n() {
        return Err(Error::SupportMismatch { left: empirical.len(), right: exact.n() });
    }
    Ok(0.5
        * empirical
            .iter()
            .zip(exact.to_f64())
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn rejects_bad_masses() {
        assert!(RationalDist::new(vec![ratio(1, 2), ratio(1, 3)]).is_err());
        assert!(RationalDist::new(vec![ratio(3, 2), ratio(-1, 2)]).is_err());
        assert!(RationalDist::new(vec![]).is_err());
    }

    #[test]
    fn tv_basics() {
        let u = RationalDist::uniform(3);
        assert!(tv_distance(&u, &u).unwrap().is_zero());
        let a = RationalDist::point_mass(2, 1);
        let b = RationalDist::point_mass(2, 2);
        assert!(tv_distance(&a, &b).unwrap().is_one());
        assert!(matches!(
            tv_distance(&a, &u),
            Err(Error::SupportMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn csv_and_json_round_trip() {
        let d = RationalDist::new(vec![ratio(11, 32), ratio(10, 32), ratio(11, 32)]).unwrap();
        let csv = d.to_csv().unwrap();
        assert!(csv.starts_with("j,numerator,denominator,float\n1,11,32,0.34375\n"));
        assert_eq!(RationalDist::from_csv(&csv).unwrap(), d);
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(serde_json::from_str::<RationalDist>(&json).unwrap(), d);
        assert!(serde_json::from_str::<RationalDist>(r#"{"mass":["1/2"]}"#).is_err());
    }
}
