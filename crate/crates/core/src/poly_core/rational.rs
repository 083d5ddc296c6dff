//! Exact rational scalars.
//!
//! Backed by [`num_rational::BigRational`], which already keeps values in
//! lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(p))
        }
    }
}

/// `p/q`, or just `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_vector(items: &[String]) -> Result<Vec<Rational>> {
    items.iter().map(|s| parse_rational(s)).collect()
}

pub fn format_vector(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

/// Parses a comma-separated list such as `1,2,-1/3`.
pub fn parse_csv(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(parse_rational).collect()
}

pub(crate) fn sign_of_first_nonzero<'a>(it: impl IntoIterator<Item = &'a Rational>) -> i8 {
    for c in it {
        if c.is_positive() {
            return 1;
        }
        if c.is_negative() {
            return -1;
        }
    }
    0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("6/4").unwrap(), frac(3, 2));
        assert_eq!(parse_rational(" -3 ").unwrap(), int(-3));
        assert_eq!(parse_rational("2/-4").unwrap(), frac(-1, 2));
        assert_eq!(format_rational(&frac(-1, 2)), "-1/2");
        assert_eq!(format_rational(&int(0)), "0");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn csv() {
        assert_eq!(parse_csv("1,2,-1/3").unwrap(), vec![int(1), int(2), frac(-1, 3)]);
    }
}
