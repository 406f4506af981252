//! Helpers around [`BigRational`]: parsing, "num/den" formatting, integer
//! powers and serde adapters.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"a/b"` or a bare integer `"a"`. Decimals are rejected.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("`{s}` is not an exact rational (expected a/b)")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("`{s}` is not an exact rational (expected a/b)")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("`{s}` has a zero denominator")));
    }
    Ok(BigRational::new(num, den))
}

/// Always written as `num/den`, also for integers.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn to_f64(r: &BigRational) -> f64 {
    // `ToPrimitive` on big ratios handles huge numerators and denominators.
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational power. Negative exponents invert; only a zero base with a
/// negative exponent is rejected (so `1^-1 = 1`).
pub fn rat_pow(base: &BigRational, exp: i64) -> Result<BigRational> {
    if exp >= 0 {
        return Ok(num_traits::pow(base.clone(), exp as usize));
    }
    if base.is_zero() {
        return Err(Error::ZeroBaseNegativeExponent { exp });
    }
    Ok(num_traits::pow(base.recip(), exp.unsigned_abs() as usize))
}

/// `m^(m-2)` for `m >= 1`, with `1^-1 = 1`. Counts labelled trees on `m` vertices.
pub fn tree_power(m: u64) -> BigInt {
    debug_assert!(m >= 1);
    if m == 1 {
        return BigInt::one();
    }
    num_traits::pow(BigInt::from(m), (m - 2) as usize)
}

pub fn check_probability(p: &BigRational) -> Result<()> {
    if p.is_negative() || *p > BigRational::one() {
        return Err(Error::ProbabilityOutOfRange(format_rational(p)));
    }
    Ok(())
}

/// Serde adapter storing a rational as a `"num/den"` string.
pub mod serde_str {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Same as [`serde_str`] for a sequence of rationals.
pub mod serde_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&format_rational(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigRational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_formats() {
        assert_eq!(parse_rational("3/4").unwrap(), ratio(3, 4));
        assert_eq!(parse_rational(" 6/8 ").unwrap(), ratio(3, 4));
        assert_eq!(parse_rational("2").unwrap(), int(2));
        assert_eq!(format_rational(&int(2)), "2/1");
        assert_eq!(format_rational(&ratio(-2, 4)), "-1/2");
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn negative_powers() {
        assert_eq!(rat_pow(&int(1), -1).unwrap(), int(1));
        assert_eq!(rat_pow(&ratio(2, 3), -2).unwrap(), ratio(9, 4));
        assert_eq!(rat_pow(&int(0), 0).unwrap(), int(1));
        assert!(matches!(
            rat_pow(&int(0), -1),
            Err(Error::ZeroBaseNegativeExponent { exp: -1 })
        ));
    }

    #[test]
    fn tree_powers() {
        assert_eq!(tree_power(1), BigInt::from(1));
        assert_eq!(tree_power(2), BigInt::from(1));
        assert_eq!(tree_power(4), BigInt::from(16));
    }
}
