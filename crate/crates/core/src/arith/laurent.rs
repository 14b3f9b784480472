use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::dense::{self, Dense};
use super::rational::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// Laurent polynomial in one indeterminate `q` with rational coefficients.
///
/// Stored as `q^low * (c_0 + c_1 q + ...) / den` with integer `c_i`, so that
/// products and gcds run on integer vectors. The representation is unique:
/// `c_0` and the last coefficient are nonzero, `den > 0` and
/// `gcd(content(c), den) = 1`. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Dense,
    den: BigInt,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { low: 0, coeffs: Vec::new(), den: BigInt::one() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, exp: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let (n, d) = c.into_raw();
        LaurentPoly { low: exp, coeffs: vec![n], den: d }
    }

    /// `q^exp` with coefficient one.
    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(Rational::one(), exp)
    }

    pub fn from_int_coeffs(low: i64, coeffs: &[i64]) -> Self {
        Self::from_parts(low, coeffs.iter().map(|&c| BigInt::from(c)).collect(), BigInt::one())
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let mut acc = Self::zero();
        for (e, c) in terms {
            acc = &acc + &Self::monomial(c, e);
        }
        acc
    }

    pub(crate) fn from_parts(low: i64, mut coeffs: Dense, mut den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero scale denominator");
        dense::trim(&mut coeffs);
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Self::zero();
        }
        if lead_zeros > 0 {
            coeffs.drain(..lead_zeros);
        }
        if den.is_negative() {
            den = -den;
            coeffs.iter_mut().for_each(|c| *c = -&*c);
        }
        if !den.is_one() {
            let g = dense::content(&coeffs).gcd(&den);
            if !g.is_one() {
                coeffs.iter_mut().for_each(|c| *c /= &g);
                den /= &g;
            }
        }
        LaurentPoly { low: low + lead_zeros as i64, coeffs, den }
    }

    pub(crate) fn int_coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub(crate) fn low(&self) -> i64 {
        self.low
    }

    pub(crate) fn scale_den(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one() && self.den.is_one()
    }

    /// True when the polynomial is a constant (including zero).
    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.low == 0 && self.coeffs.len() == 1)
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// Distance between the largest and smallest exponent.
    pub fn span(&self) -> u64 {
        self.coeffs.len().saturating_sub(1) as u64
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        let idx = exp - self.low;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            return Rational::zero();
        }
        Rational::new(self.coeffs[idx as usize].clone(), self.den.clone())
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, Rational::new(c.clone(), self.den.clone())))
    }

    pub fn leading_coeff(&self) -> Option<Rational> {
        self.coeffs.last().map(|c| Rational::new(c.clone(), self.den.clone()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() || self.is_zero() {
            return Self::zero();
        }
        Self::from_parts(self.low, dense::scale(&self.coeffs, c.numer()), &self.den * c.denom())
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: self.low + k, coeffs: self.coeffs.clone(), den: self.den.clone() }
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return Self::one();
        }
        Self::from_parts(
            self.low * e as i64,
            dense::pow(&self.coeffs, e),
            num_traits::pow(self.den.clone(), e as usize),
        )
    }

    /// Substitutes `q -> q^w`, scaling every exponent by `w >= 1`.
    pub fn substitute_power(&self, w: u32) -> Self {
        assert!(w >= 1, "substitution exponent must be positive");
        if w == 1 || self.is_zero() {
            return self.clone();
        }
        let w_us = w as usize;
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * w_us + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * w_us] = c.clone();
        }
        LaurentPoly { low: self.low * w as i64, coeffs, den: self.den.clone() }
    }

    /// Exact value at `q = q0`. Negative exponents at `q0 = 0` are a pole.
    pub fn eval(&self, q0: &Rational) -> Result<Rational> {
        if self.is_zero() {
            return Ok(Rational::zero());
        }
        if q0.is_zero() {
            if self.low < 0 {
                return Err(Error::Pole { at: "0".into(), detail: "negative power of q".into() });
            }
            return Ok(if self.low == 0 { self.coeff(0) } else { Rational::zero() });
        }
        // Horner on numerator and denominator of q0 separately:
        // sum c_i a^i b^(d-i) / b^d.
        let (a, b) = (q0.numer(), q0.denom());
        let d = self.coeffs.len() - 1;
        let mut acc = BigInt::zero();
        let mut bpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * a + c * &bpow;
            bpow *= b;
        }
        // acc = sum_i c_i a^i b^(d-i)
        let bd = num_traits::pow(b.clone(), d);
        let body = Rational::new(acc, bd * &self.den);
        Ok(body * super::rational::rational_pow(q0, self.low)?)
    }

    /// Sum of coefficients, the value at `q = 1`.
    pub fn eval_at_one(&self) -> Rational {
        let s: BigInt = self.coeffs.iter().sum();
        Rational::new(s, self.den.clone())
    }

    pub(crate) fn mul_dense(&self, d: &[BigInt]) -> Self {
        Self::from_parts(self.low, dense::mul(&self.coeffs, d), self.den.clone())
    }

    pub(crate) fn div_dense_exact(&self, d: &[BigInt]) -> Option<Self> {
        dense::div_exact(&self.coeffs, d).map(|c| Self::from_parts(self.low, c, self.den.clone()))
    }

    fn aligned(&self, other: &Self) -> (i64, Dense, Dense, BigInt) {
        let low = self.low.min(other.low);
        let l = self.den.lcm(&other.den);
        let fa = &l / &self.den;
        let fb = &l / &other.den;
        let a = dense::shift_up(&dense::scale(&self.coeffs, &fa), (self.low - low) as usize);
        let b = dense::shift_up(&dense::scale(&other.coeffs, &fb), (other.low - low) as usize);
        (low, a, b, l)
    }

    /// Human-readable form, ascending exponents: `1+q`, `-q^-1`, `(1/2)*q^3`.
    pub fn to_pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let coeff =
                if mag.denom().is_one() { mag.numer().to_string() } else { format!("({})", format_rational(&mag)) };
            match e {
                0 => out.push_str(&coeff),
                _ => {
                    if !mag.is_one() {
                        out.push_str(&coeff);
                        out.push('*');
                    }
                    out.push('q');
                    if e != 1 {
                        out.push('^');
                        out.push_str(&e.to_string());
                    }
                }
            }
        }
        out
    }
}

impl Default for LaurentPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self.to_pretty())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pretty())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (low, a, b, den) = self.aligned(rhs);
        LaurentPoly::from_parts(low, dense::add(&a, &b), den)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        if rhs.is_zero() {
            return self.clone();
        }
        let (low, a, b, den) = self.aligned(rhs);
        LaurentPoly::from_parts(low, dense::sub(&a, &b), den)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly::from_parts(self.low + rhs.low, dense::mul(&self.coeffs, &rhs.coeffs), &self.den * &rhs.den)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { low: self.low, coeffs: dense::neg(&self.coeffs), den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident, $t:ty) => {
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&$t> for $t {
            type Output = $t;
            fn $m(self, rhs: &$t) -> $t {
                (&self).$m(rhs)
            }
        }
    };
}
pub(crate) use forward_owned;

forward_owned!(Add, add, LaurentPoly);
forward_owned!(Sub, sub, LaurentPoly);
forward_owned!(Mul, mul, LaurentPoly);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.num_terms()))?;
        for (e, c) in self.terms() {
            seq.serialize_element(&(e, format_rational(&c)))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<(i64, String)> = Vec::deserialize(d)?;
        let mut seen = std::collections::BTreeSet::new();
        let mut terms = Vec::with_capacity(pairs.len());
        for (e, c) in pairs {
            if !seen.insert(e) {
                return Err(D::Error::custom(format!("duplicate exponent {e}")));
            }
            terms.push((e, parse_rational(&c).map_err(D::Error::custom)?));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}
