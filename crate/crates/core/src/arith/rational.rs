//! Rational helpers on top of `num_rational::BigRational`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision reduced fraction with positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `"n"` when the denominator is one, `"n/d"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero(format!("rational {s:?} has zero denominator")));
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Ordinary binomial coefficient C(n, k); zero outside 0 <= k <= n.
pub fn binomial(n: u32, k: u32) -> BigInt {
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

/// Exact power with an integer (possibly negative) exponent.
pub fn rational_pow(base: &Rational, e: i64) -> Result<Rational> {
    if e < 0 && base.is_zero() {
        return Err(Error::DivisionByZero("zero raised to a negative power".into()));
    }
    let mag = u32::try_from(e.unsigned_abs()).map_err(|_| Error::Resource(format!("exponent {e} too large")))?;
    let p = num_traits::pow(base.clone(), mag as usize);
    Ok(if e < 0 { p.recip() } else { p })
}
