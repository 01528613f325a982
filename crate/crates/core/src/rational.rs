//! Exact rationals and their `p/q` text form.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid rational `{0}`: expected an integer or `p/q` with q != 0")]
pub struct ParseRationalError(pub String);

/// Builds `num/den` from machine integers. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `p/q`, `-p/q` or a plain integer. Whitespace around the tokens is ignored.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(text.to_string());
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err())?;
    let den = BigInt::from_str(den).map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Formats as `p/q`, or `p` when the denominator is 1.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Formats as `p/q` even for integers (`2/1`).
pub fn format_rational_pq(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Returns the fractional part `q - floor(q)`, which lies in `[0, 1)`.
pub fn frac(q: &Rational) -> Rational {
    q - q.floor()
}

/// True when `q` is an integer divisible by 2.
pub fn is_even_integer(q: &Rational) -> bool {
    q.is_integer() && q.numer().is_even()
}

/// Converts to `i64` when `q` is an integer that fits.
pub fn to_i64(q: &Rational) -> Option<i64> {
    if !q.is_integer() {
        return None;
    }
    i64::try_from(q.numer()).ok()
}

pub fn is_positive(q: &Rational) -> bool {
    q.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("6/81").unwrap(), ratio(2, 27));
        assert_eq!(parse_rational(" -4 / 5 ").unwrap(), ratio(-4, 5));
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("3/-6").unwrap(), ratio(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("0.5").is_err());
        assert_eq!(format_rational(&ratio(10, 4)), "5/2");
        assert_eq!(format_rational(&int(-2)), "-2");
        assert_eq!(format_rational_pq(&int(2)), "2/1");
    }

    #[test]
    fn fractional_part_is_in_unit_interval() {
        assert_eq!(frac(&ratio(7, 5)), ratio(2, 5));
        assert_eq!(frac(&ratio(-1, 3)), ratio(2, 3));
        assert_eq!(frac(&int(-4)), int(0));
    }

    #[test]
    fn evenness() {
        assert!(is_even_integer(&int(0)));
        assert!(is_even_integer(&int(-4)));
        assert!(!is_even_integer(&int(3)));
        assert!(!is_even_integer(&ratio(4, 3)));
    }
}
