//! Exact rational scalars.
//!
//! Every probability in this crate is a [`Rational`]: an arbitrary-precision
//! fraction kept in lowest terms with a positive denominator. Capacity and the
//! Bhattacharyya parameter are the only floating-point quantities anywhere,
//! and they are produced from rationals at the very end via
//! [`rational_to_f64`].

use num::bigint::BigInt;
use num::{BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact fraction; always reduced, denominator positive.
pub type Rational = BigRational;

/// Shorthand constructor from machine integers. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"num"` or `"num/den"`. Decimal notation is rejected: the whole
/// point of the library is exactness, and `0.1` has no exact binary or
/// decimal-free reading.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = |_| Error::Parse(format!("invalid rational {s:?}; expected \"num\" or \"num/den\""));
    if s.contains('.') {
        return Err(Error::Parse(format!(
            "decimal notation {s:?} rejected; use an exact fraction such as 1/4"
        )));
    }
    match s.split_once('/') {
        None => {
            let n: BigInt = s.parse().map_err(bad)?;
            Ok(Rational::from_integer(n))
        }
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(bad)?;
            let d: BigInt = d.parse().map_err(bad)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Formats as `"num/den"`, or just `"num"` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Rounds an exact rational to `f64`, correct even when numerator or
/// denominator overflow the `f64` range (synthesis at order 10 already
/// produces denominators of 2^1024).
pub fn rational_to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let num = r.numer().magnitude();
    let den = r.denom().magnitude();
    // Scale so the integer quotient keeps ~64 significant bits, then undo the
    // scaling in the exponent.
    let shift = 64 + den.bits() as i64 - num.bits() as i64;
    let q = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        num / (den << (-shift) as u64)
    };
    let x = q.to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(-shift as i32);
    if r.is_negative() {
        -x
    } else {
        x
    }
}

/// `1 - r`.
pub fn complement(r: &Rational) -> Rational {
    Rational::one() - r
}

pub fn is_probability(r: &Rational) -> bool {
    !r.is_negative() && *r <= Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "1", "7/10", "-3/4", "1/2"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        assert_eq!(format_rational(&parse_rational("14/20").unwrap()), "7/10");
        assert_eq!(format_rational(&parse_rational("3/1").unwrap()), "3");
    }

    #[test]
    fn parse_rejects_decimals_and_junk() {
        assert!(parse_rational("0.25").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
    }

    #[test]
    fn f64_conversion_handles_extreme_magnitudes() {
        assert_eq!(rational_to_f64(&rat(1, 4)), 0.25);
        assert_eq!(rational_to_f64(&rat(-1, 2)), -0.5);
        let tiny = Rational::new(BigInt::one(), BigInt::from(2).pow(2000));
        assert_eq!(rational_to_f64(&tiny), 0.0);
        let almost_one = Rational::one() - tiny;
        assert_eq!(rational_to_f64(&almost_one), 1.0);
        let third = Rational::new(BigInt::from(10).pow(400), BigInt::from(3) * BigInt::from(10).pow(400));
        assert!((rational_to_f64(&third) - 1.0 / 3.0).abs() < 1e-15);
    }
}
