//! Exact rational scalars and the integer helpers used throughout.
//!
//! Scalars are serialized as decimal strings `"p/q"` (or `"p"` when the
//! denominator is one) so that no precision is ever lost in JSON.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator by `num_rational`.
pub type ExactScalar = BigRational;

pub fn int(value: i64) -> ExactScalar {
    ExactScalar::from_integer(BigInt::from(value))
}

pub fn ratio(numer: i64, denom: i64) -> ExactScalar {
    ExactScalar::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn from_bigint(value: BigInt) -> ExactScalar {
    ExactScalar::from_integer(value)
}

/// `x^k` with the convention `0^0 = 1`.
pub fn powi(x: &ExactScalar, k: usize) -> ExactScalar {
    let mut acc = ExactScalar::one();
    let mut base = x.clone();
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

pub fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Rising factorial `(x)_n = x (x+1) ... (x+n-1)`.
pub fn rising(x: &ExactScalar, n: usize) -> ExactScalar {
    (0..n).fold(ExactScalar::one(), |acc, i| acc * (x + int(i as i64)))
}

/// Parses `"p"`, `"p/q"` or a finite decimal such as `"-0.25"`.
pub fn parse_scalar(text: &str) -> Result<ExactScalar> {
    let t = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(ExactScalar::new(p, q));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let numer: BigInt = digits.parse().map_err(|_| bad())?;
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        let value = ExactScalar::new(numer, denom);
        return Ok(if negative { -value } else { value });
    }
    let p: BigInt = t.parse().map_err(|_| bad())?;
    Ok(ExactScalar::from_integer(p))
}

pub fn parse_scalar_list(text: &str) -> Result<Vec<ExactScalar>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(parse_scalar)
        .collect()
}

pub fn to_f64(x: &ExactScalar) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Serde adapters that write scalars as strings.
pub mod serde_str {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{parse_scalar, ExactScalar};

    pub fn serialize<S: Serializer>(value: &ExactScalar, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(value)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ExactScalar, D::Error> {
        let text = String::deserialize(d)?;
        parse_scalar(&text).map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use serde::ser::SerializeSeq;
        use serde::{Deserialize, Deserializer, Serializer};

        use super::super::{parse_scalar, ExactScalar};

        pub fn serialize<S: Serializer>(values: &[ExactScalar], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(values.len()))?;
            for v in values {
                seq.serialize_element(&v.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<ExactScalar>, D::Error> {
            let texts = Vec::<String>::deserialize(d)?;
            texts
                .iter()
                .map(|t| parse_scalar(t).map_err(serde::de::Error::custom))
                .collect()
        }
    }
}

pub fn to_strings(values: &[ExactScalar]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse_scalar("3").unwrap(), int(3));
        assert_eq!(parse_scalar("-6/4").unwrap(), ratio(-3, 2));
        assert_eq!(parse_scalar("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse_scalar("-1.5").unwrap(), ratio(-3, 2));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("abc").is_err());
        assert!(parse_scalar("1.2.3").is_err());
    }

    #[test]
    fn display_is_lowest_terms() {
        assert_eq!(ratio(4, -6).to_string(), "-2/3");
        assert_eq!(int(7).to_string(), "7");
    }

    #[test]
    fn zero_to_the_zero_is_one() {
        assert_eq!(powi(&int(0), 0), int(1));
        assert_eq!(powi(&int(0), 3), int(0));
        assert_eq!(powi(&ratio(-1, 2), 3), ratio(-1, 8));
    }

    #[test]
    fn binomials_and_factorials() {
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(6), BigInt::from(720));
        assert_eq!(rising(&ratio(1, 2), 3), ratio(15, 8));
    }
}
