//! q-brackets, q-factorials and q-binomial coefficients in base `q^w`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{LaurentPoly, RatFun};
use crate::error::{Error, Result};

/// Exponent `w >= 1` of the base `q^w` a q-object is built in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct BaseExp(u32);

impl BaseExp {
    pub const ONE: BaseExp = BaseExp(1);

    pub fn new(w: u32) -> Result<Self> {
        if w == 0 {
            return Err(Error::Domain("base exponent w must be at least 1".into()));
        }
        Ok(BaseExp(w))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl TryFrom<u32> for BaseExp {
    type Error = Error;
    fn try_from(w: u32) -> Result<Self> {
        BaseExp::new(w)
    }
}

impl From<BaseExp> for u32 {
    fn from(b: BaseExp) -> u32 {
        b.0
    }
}

impl fmt::Display for BaseExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `[m]_{q^w}` as a Laurent polynomial.
///
/// For `m >= 0` this is `1 + q^w + ... + q^{w(m-1)}`; for `m < 0` it is
/// `-q^{wm} [-m]_{q^w}`, which equals `(1 - q^{wm}) / (1 - q^w)`.
pub fn q_bracket_poly(m: i64, w: BaseExp) -> LaurentPoly {
    let w = w.get() as i64;
    let (sign, start, count) = if m >= 0 { (1, 0, m) } else { (-1, w * m, -m) };
    if count == 0 {
        return LaurentPoly::zero();
    }
    let mut coeffs = vec![0i64; ((count - 1) * w + 1) as usize];
    for k in 0..count {
        coeffs[(k * w) as usize] = sign;
    }
    LaurentPoly::from_int_coeffs(start, &coeffs)
}

/// `[m]_{q^w} = (1 - q^{wm}) / (1 - q^w)`.
pub fn q_bracket(m: i64, w: BaseExp) -> RatFun {
    RatFun::from_poly(q_bracket_poly(m, w))
}

/// `[r]_{q^w}! = [1]_{q^w} [2]_{q^w} ... [r]_{q^w}`; the empty product is 1.
pub fn q_factorial(r: u32, w: BaseExp) -> RatFun {
    let mut acc = LaurentPoly::one();
    for k in 2..=r as i64 {
        acc = &acc * &q_bracket_poly(k, w);
    }
    RatFun::from_poly(acc)
}

/// `[m]_{q^w} [m-1]_{q^w} ... [m-r+1]_{q^w} / [r]_{q^w}!`.
pub fn q_binomial(m: i64, r: u32, w: BaseExp) -> RatFun {
    let mut top = LaurentPoly::one();
    for k in 0..r as i64 {
        top = &top * &q_bracket_poly(m - k, w);
        if top.is_zero() {
            return RatFun::zero();
        }
    }
    (&RatFun::from_poly(top) * &q_factorial(r, w).inv().expect("q-factorial is nonzero")).canonical()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{binomial, int, Rational};

    fn w(x: u32) -> BaseExp {
        BaseExp::new(x).unwrap()
    }

    fn poly(low: i64, c: &[i64]) -> RatFun {
        RatFun::from_poly(LaurentPoly::from_int_coeffs(low, c))
    }

    #[test]
    fn brackets() {
        assert!(q_bracket(0, w(1)).is_zero());
        assert_eq!(q_bracket(2, w(1)), poly(0, &[1, 1]));
        assert_eq!(q_bracket(-1, w(1)), poly(-1, &[-1]));
        assert_eq!(q_bracket(3, w(2)), poly(0, &[1, 0, 1, 0, 1]));
    }

    #[test]
    fn negative_bracket_matches_quotient_definition() {
        for m in -6i64..=6 {
            for b in 1..=3 {
                let def = RatFun::new(
                    &LaurentPoly::one() - &LaurentPoly::q_pow(b as i64 * m),
                    &LaurentPoly::one() - &LaurentPoly::q_pow(b as i64),
                )
                .unwrap();
                assert_eq!(q_bracket(m, w(b)), def, "m={m} w={b}");
            }
        }
    }

    #[test]
    fn factorials() {
        assert_eq!(q_factorial(0, w(1)), RatFun::one());
        assert_eq!(q_factorial(2, w(1)), poly(0, &[1, 1]));
        assert_eq!(q_factorial(3, w(1)), &poly(0, &[1, 1]) * &poly(0, &[1, 1, 1]));
    }

    #[test]
    fn binomials() {
        assert_eq!(q_binomial(7, 0, w(2)), RatFun::one());
        assert_eq!(q_binomial(-3, 0, w(1)), RatFun::one());
        assert_eq!(q_binomial(2, 1, w(1)), poly(0, &[1, 1]));
        assert!(q_binomial(1, 2, w(1)).is_zero());
        // Gaussian binomial [4 choose 2] = 1 + q + 2q^2 + q^3 + q^4
        let g = q_binomial(4, 2, w(1));
        assert!(g.is_polynomial());
        assert_eq!(g, poly(0, &[1, 1, 2, 1, 1]));
    }

    #[test]
    fn base_change_law() {
        for m in 1..=8i64 {
            for n in 1..=8i64 {
                let lhs = q_bracket(m * n, w(1));
                let rhs = &q_bracket(m, w(1)) * &q_bracket(n, w(m as u32));
                assert_eq!(lhs, rhs, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn limits_at_one() {
        for m in 0..=8i64 {
            assert_eq!(q_bracket(m, w(1)).limit_at_one().unwrap(), int(m));
            for r in 0..=m as u32 {
                let expected = Rational::from_integer(binomial(m as u32, r));
                assert_eq!(q_binomial(m, r, w(1)).limit_at_one().unwrap(), expected);
            }
        }
    }

    #[test]
    fn pascal_type_recurrence() {
        for m in 1..=10i64 {
            let rhs = &(&RatFun::q_pow(1) * &q_bracket(m - 1, w(1))) + &RatFun::one();
            assert_eq!(q_bracket(m, w(1)), rhs);
        }
    }

    #[test]
    fn zero_base_rejected() {
        assert!(BaseExp::new(0).is_err());
        assert!(serde_json::from_str::<BaseExp>("0").is_err());
        assert_eq!(serde_json::from_str::<BaseExp>("3").unwrap().get(), 3);
    }
}
