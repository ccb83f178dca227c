//! Argument parsers for exact inputs.

use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed};
use univalence::parse_rational;

/// `p/q` or an integer. Decimals are rejected so that nothing is rounded.
pub fn rational(text: &str) -> Result<BigRational, String> {
    if text.contains(['.', 'e', 'E']) {
        return Err(format!(
            "`{text}` is not of the form p/q; decimals are not accepted"
        ));
    }
    parse_rational(text).map_err(|e| e.to_string())
}

/// Exact value of a decimal such as `1e-5` or `0.001`, or of `p/q`.
pub fn decimal(text: &str) -> Result<BigRational, String> {
    let t = text.trim();
    if t.contains('/') {
        return parse_rational(t).map_err(|e| e.to_string());
    }
    let bad = || format!("cannot read `{text}` as a number");
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], i64::from_str(&t[i + 1..]).map_err(|_| bad())?),
        None => (t, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits = format!("{int_part}{frac_part}");
    if digits.is_empty() || digits == "-" || digits == "+" {
        return Err(bad());
    }
    let value = parse_rational(&digits).map_err(|_| bad())?;
    let shift = exponent - frac_part.len() as i64;
    let ten = BigRational::from_integer(10.into());
    let scale = if shift >= 0 {
        num_traits::pow(ten, shift as usize)
    } else {
        BigRational::one() / num_traits::pow(ten, (-shift) as usize)
    };
    Ok(value * scale)
}

pub fn positive_decimal(text: &str) -> Result<BigRational, String> {
    let v = decimal(text)?;
    if !v.is_positive() {
        return Err(format!("`{text}` must be positive"));
    }
    Ok(v)
}

/// A list of parameter values, parsed as one argument.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<BigRational>);

/// Comma-separated list of `p/q`.
pub fn grid(text: &str) -> Result<Grid, String> {
    let values = text
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(rational)
        .collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        return Err("empty grid".into());
    }
    Ok(Grid(values))
}

/// `start:stop:step`, stop included when hit exactly.
pub fn range(text: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = text.split(':').collect();
    let [start, stop, step] = parts[..] else {
        return Err(format!("expected start:stop:step, got `{text}`"));
    };
    let (start, stop, step) = (rational(start)?, rational(stop)?, rational(step)?);
    if !step.is_positive() {
        return Err("range step must be positive".into());
    }
    if stop < start {
        return Err("range stop is below start".into());
    }
    let mut out = Vec::new();
    let mut x = start;
    while x <= stop {
        out.push(x.clone());
        x += &step;
        if out.len() > 100_000 {
            return Err("range has more than 100000 points".into());
        }
    }
    Ok(Grid(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use univalence::rational::rational_from_i64 as r;

    #[test]
    fn decimals() {
        assert_eq!(decimal("1e-5").unwrap(), r(1, 100_000));
        assert_eq!(decimal("0.125").unwrap(), r(1, 8));
        assert_eq!(decimal("2.5E1").unwrap(), r(25, 1));
        assert_eq!(decimal("3/4").unwrap(), r(3, 4));
        assert!(decimal("abc").is_err());
        assert!(positive_decimal("0").is_err());
        assert!(BigRational::zero() < decimal("1e-300").unwrap());
    }

    #[test]
    fn rationals_reject_decimals() {
        assert!(rational("0.5").is_err());
        assert!(rational("1e3").is_err());
        assert_eq!(rational("5/7").unwrap(), r(5, 7));
        assert_eq!(rational("-2").unwrap(), r(-2, 1));
    }

    #[test]
    fn grids_and_ranges() {
        assert_eq!(grid("5/7, 1").unwrap().0, vec![r(5, 7), r(1, 1)]);
        assert!(grid(",").is_err());
        assert_eq!(
            range("1/2:1:1/4").unwrap().0,
            vec![r(1, 2), r(3, 4), r(1, 1)]
        );
        assert_eq!(range("0:1:2/3").unwrap().0, vec![r(0, 1), r(2, 3)]);
        assert!(range("1:0:1").is_err());
        assert!(range("0:1").is_err());
        assert!(range("0:1:0").is_err());
    }
}
