//! Exact rational coefficients.
//!
//! Coefficients are arbitrary-precision fractions kept in lowest terms with a
//! positive denominator; the text form is `"p"` or `"p/q"`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// `n!` as a rational.
pub fn factorial(n: usize) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    Rational::from_integer(acc)
}

/// Parses `"p"` or `"p/q"` into lowest terms; a zero denominator is an error.
pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Json(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Reduced fraction string: `"3"`, `"-1/2"`, `"0"`.
pub fn format(r: &Rational) -> String {
    r.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_text() {
        assert_eq!(format(&frac(2, -4)), "-1/2");
        assert_eq!(format(&frac(6, 2)), "3");
        assert_eq!(format(&frac(0, -7)), "0");
        assert_eq!(parse("4/6").unwrap(), frac(2, 3));
        assert_eq!(parse(" -5 ").unwrap(), int(-5));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), int(1));
        assert_eq!(factorial(4), int(24));
        assert_eq!(format(&factorial(25)), "15511210043330985984000000");
    }
}
