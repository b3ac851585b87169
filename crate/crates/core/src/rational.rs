//! Exact rational scalars.
//!
//! [`Q`] is an arbitrary-precision rational, always stored reduced with a
//! positive denominator (guaranteed by `num_rational`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// `n!` as a rational.
pub fn factorial(n: usize) -> Q {
    (1..=n).fold(one(), |acc, k| acc * q(k as i64))
}

pub fn binomial(n: usize, k: usize) -> Q {
    if k > n {
        return zero();
    }
    let mut acc = one();
    for i in 0..k {
        acc = acc * q((n - i) as i64) / q((i + 1) as i64);
    }
    acc
}

/// Formats as `"n"` or `"n/d"`.
pub fn to_string(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"n"` or `"n/d"`.
pub fn parse(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("malformed rational {s:?}"));
    match s.split_once('/') {
        None => Ok(Q::from_integer(s.parse::<BigInt>().map_err(|_| bad())?)),
        Some((n, d)) => {
            let n = n.trim().parse::<BigInt>().map_err(|_| bad())?;
            let d = d.trim().parse::<BigInt>().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
    }
}

/// Numerator and denominator as decimal strings, denominator positive.
pub fn to_parts(x: &Q) -> (String, String) {
    (x.numer().to_string(), x.denom().to_string())
}

pub fn from_parts(n: &str, d: &str) -> Result<Q> {
    let bad = || Error::Invalid(format!("malformed rational parts {n:?}/{d:?}"));
    let n = n.parse::<BigInt>().map_err(|_| bad())?;
    let d = d.parse::<BigInt>().map_err(|_| bad())?;
    if d.is_zero() || d.is_negative() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let x = frac(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(to_string(&frac(0, 7)), "0");
        assert_eq!(zero().denom(), &BigInt::from(1));
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["0", "-3/2", "17", "123456789012345678901234567891/2"] {
            assert_eq!(to_string(&parse(s).unwrap()), s);
        }
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
        assert!(from_parts("1", "-2").is_err());
    }

    #[test]
    fn combinatorics() {
        assert_eq!(factorial(4), q(24));
        assert_eq!(binomial(5, 2), q(10));
        assert_eq!(binomial(2, 3), q(0));
    }
}
