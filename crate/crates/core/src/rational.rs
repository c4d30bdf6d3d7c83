//! Exact rational scalars.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::ParseError;

/// Arbitrary-precision rational, always kept in reduced form with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn from_int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"n"` or `"p/q"` with `q > 0`.
pub fn parse(text: &str) -> Result<Rational, ParseError> {
    let text = text.trim();
    let bad = || ParseError::BadRational(text.to_string());
    let (num, den) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if !den.is_positive() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `"n"` for integers, `"p/q"` otherwise.
pub fn format(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / from_int(2)
}

/// `count` equally spaced values strictly between `a` and `b`.
pub fn interior_samples(a: &Rational, b: &Rational, count: usize) -> Vec<Rational> {
    let steps = from_int(count as i64 + 1);
    (1..=count)
        .map(|j| a + (b - a) * from_int(j as i64) / &steps)
        .collect()
}

pub fn to_f64(value: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    value.to_f64().unwrap_or(f64::NAN)
}

pub fn is_zero(value: &Rational) -> bool {
    value.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(format(&parse("6/4").unwrap()), "3/2");
        assert_eq!(format(&parse("-7").unwrap()), "-7");
        assert_eq!(format(&parse(" 4/2 ").unwrap()), "2");
        assert!(parse("1/0").is_err());
        assert!(parse("1/-2").is_err());
        assert!(parse("x").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn samples_are_strictly_inside() {
        let s = interior_samples(&from_int(0), &from_int(1), 2);
        assert_eq!(s, vec![parse("1/3").unwrap(), parse("2/3").unwrap()]);
        assert_eq!(midpoint(&from_int(1), &from_int(2)), parse("3/2").unwrap());
    }
}
