//! Exact rationals and their `"p/q"` string form.
//!
//! Every rational that crosses a file or process boundary is written as
//! `"p/q"` (or `"p"` when the denominator is 1) with the sign carried by the
//! numerator. Decimal input is rejected: a value such as `0.714` is not the
//! same object as `5/7`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use thiserror::Error;

pub use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer `{0}` in rational literal")]
    InvalidInteger(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("denominator must be positive in `{0}` (put the sign on the numerator)")]
    NegativeDenominator(String),
}

fn parse_integer(part: &str, whole: &str) -> Result<BigInt, ParseRationalError> {
    let digits = part.strip_prefix(['-', '+']).unwrap_or(part);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseRationalError::InvalidInteger(whole.to_string()));
    }
    part.parse::<BigInt>()
        .map_err(|_| ParseRationalError::InvalidInteger(whole.to_string()))
}

/// Parses `"p/q"` or `"p"` exactly. Whitespace around the literal is ignored.
pub fn parse_rational(text: &str) -> Result<BigRational, ParseRationalError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    match text.split_once('/') {
        None => Ok(BigRational::from_integer(parse_integer(text, text)?)),
        Some((numer, denom)) => {
            let numer = parse_integer(numer.trim(), text)?;
            let denom = parse_integer(denom.trim(), text)?;
            if denom.is_zero() {
                return Err(ParseRationalError::ZeroDenominator(text.to_string()));
            }
            if denom.is_negative() {
                return Err(ParseRationalError::NegativeDenominator(text.to_string()));
            }
            Ok(BigRational::new(numer, denom))
        }
    }
}

/// `"p/q"`, or `"p"` for integers. `Ratio`'s `Display` already has this shape
/// for reduced values, which `BigRational` always is.
pub fn format_rational(value: &BigRational) -> String {
    value.to_string()
}

pub fn rational_from_i64(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

struct RationalVisitor;

impl Visitor<'_> for RationalVisitor {
    type Value = BigRational;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational literal \"p/q\"")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<BigRational, E> {
        parse_rational(v).map_err(E::custom)
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigRational, E> {
        Ok(BigRational::from_integer(v.into()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigRational, E> {
        Ok(BigRational::from_integer(v.into()))
    }
}

/// Transparent wrapper that (de)serializes a rational as its string form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalString(pub BigRational);

impl serde::Serialize for RationalString {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> serde::Deserialize<'de> for RationalString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer
            .deserialize_any(RationalVisitor)
            .map(RationalString)
    }
}

/// `#[serde(with = "rational::as_string")]` for a single rational.
pub mod as_string {
    use super::*;
    use serde::{Deserialize, Serialize};

    pub fn serialize<S: Serializer>(value: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        RationalString(value.clone()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        RationalString::deserialize(d).map(|r| r.0)
    }
}

/// `#[serde(with = "rational::option_as_string")]`, `null` for `None`.
pub mod option_as_string {
    use super::*;
    use serde::{Deserialize, Serialize};

    pub fn serialize<S: Serializer>(value: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        value.clone().map(RationalString).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        Ok(Option::<RationalString>::deserialize(d)?.map(|r| r.0))
    }
}

/// `#[serde(with = "rational::vec_as_strings")]`
pub mod vec_as_strings {
    use super::*;
    use serde::{Deserialize, Serialize};

    pub fn serialize<S: Serializer>(values: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = values.iter().map(format_rational).collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Ok(Vec::<RationalString>::deserialize(d)?
            .into_iter()
            .map(|r| r.0)
            .collect())
    }
}

/// `#[serde(with = "rational::matrix_as_strings")]`
pub mod matrix_as_strings {
    use super::*;
    use serde::{Deserialize, Serialize};

    pub fn serialize<S: Serializer>(rows: &[Vec<BigRational>], s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<Vec<String>> = rows
            .iter()
            .map(|row| row.iter().map(format_rational).collect())
            .collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigRational>>, D::Error> {
        Ok(Vec::<Vec<RationalString>>::deserialize(d)?
            .into_iter()
            .map(|row| row.into_iter().map(|r| r.0).collect())
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("5/7").unwrap(), rational_from_i64(5, 7));
        assert_eq!(parse_rational("-10/4").unwrap(), rational_from_i64(-5, 2));
        assert_eq!(parse_rational(" 3 ").unwrap(), rational_from_i64(3, 1));
        assert_eq!(parse_rational("0/1").unwrap(), BigRational::zero());
    }

    #[test]
    fn rejects_decimals_and_bad_denominators() {
        assert!(matches!(
            parse_rational("0.714"),
            Err(ParseRationalError::InvalidInteger(_))
        ));
        assert!(matches!(
            parse_rational("1/0"),
            Err(ParseRationalError::ZeroDenominator(_))
        ));
        assert!(matches!(
            parse_rational("1/-3"),
            Err(ParseRationalError::NegativeDenominator(_))
        ));
        assert_eq!(parse_rational(""), Err(ParseRationalError::Empty));
        assert!(parse_rational("1/2/3").is_err());
    }

    #[test]
    fn formats_sign_on_numerator() {
        assert_eq!(format_rational(&rational_from_i64(1, -3)), "-1/3");
        assert_eq!(format_rational(&rational_from_i64(6, 3)), "2");
        assert_eq!(format_rational(&BigRational::zero()), "0");
    }
}
