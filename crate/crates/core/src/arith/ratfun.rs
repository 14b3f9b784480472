use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::dense::{self, Dense};
use super::laurent::{forward_owned, LaurentPoly};
use super::rational::{format_rational, Rational};
use super::DEFAULT_MAX_SPAN;
use crate::error::{Error, Result};

/// Quotient of two Laurent polynomials in `q`.
///
/// The denominator is always kept *den-normalized*: an ordinary polynomial
/// with nonzero constant term, primitive integer coefficients and positive
/// leading coefficient. Scalars and powers of `q` live in the numerator.
/// Common factors between numerator and denominator are only removed by
/// [`RatFun::canonical`] and by cross-cancellation in products, so equality
/// is decided by cross-multiplication rather than by comparing fields.
#[derive(Clone)]
pub struct RatFun {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFun {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero("rational function with zero denominator".into()));
        }
        Ok(Self::from_normalized_parts(num, den))
    }

    fn from_normalized_parts(num: LaurentPoly, den: LaurentPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        // den = (c / s) * q^low * P with P primitive, positive leading coefficient.
        let ints = den.int_coeffs();
        let mut c = dense::content(ints);
        if ints.last().unwrap().is_negative() {
            c = -c;
        }
        let prim: Dense = if c.is_one() { ints.to_vec() } else { ints.iter().map(|x| x / &c).collect() };
        let factor = Rational::new(den.scale_den().clone(), c);
        let num = num.scale(&factor).shift(-den.low());
        RatFun { num, den: LaurentPoly::from_parts(0, prim, BigInt::one()) }
    }

    pub fn zero() -> Self {
        RatFun { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RatFun { num: p, den: LaurentPoly::one() }
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(c)))
    }

    /// `q^k`.
    pub fn q_pow(k: i64) -> Self {
        Self::from_poly(LaurentPoly::q_pow(k))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Largest exponent span of numerator or denominator.
    pub fn span(&self) -> u64 {
        self.num.span().max(self.den.span())
    }

    pub fn check_span(&self, max_span: u64) -> Result<()> {
        if self.span() > max_span {
            return Err(Error::Resource(format!("exponent span {} exceeds the limit {max_span}", self.span())));
        }
        Ok(())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RatFun { num: self.num.scale(c), den: self.den.clone() }.fix_zero()
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        RatFun { num: self.num.shift(k), den: self.den.clone() }
    }

    fn fix_zero(self) -> Self {
        if self.num.is_zero() {
            Self::zero()
        } else {
            self
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero("inverse of the zero function".into()));
        }
        Ok(Self::from_normalized_parts(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// Integer power with the default exponent-span guard.
    pub fn pow(&self, e: i64) -> Result<Self> {
        self.pow_with_limit(e, DEFAULT_MAX_SPAN)
    }

    pub fn pow_with_limit(&self, e: i64, max_span: u64) -> Result<Self> {
        if e < 0 && self.is_zero() {
            return Err(Error::DivisionByZero("zero function raised to a negative power".into()));
        }
        let mag = e.unsigned_abs();
        if mag > u32::MAX as u64 {
            return Err(Error::Resource(format!("exponent {e} too large")));
        }
        let projected = self.span().saturating_mul(mag);
        if projected > max_span {
            return Err(Error::Resource(format!("power would reach exponent span {projected} (limit {max_span})")));
        }
        let mag = mag as u32;
        let base = if e < 0 { self.inv()? } else { self.clone() };
        Ok(RatFun { num: base.num.pow(mag), den: base.den.pow(mag) }.fix_zero())
    }

    /// Substitutes `q -> q^w`.
    pub fn substitute_power(&self, w: u32) -> Self {
        RatFun { num: self.num.substitute_power(w), den: self.den.substitute_power(w) }
    }

    /// Exact equality by cross-multiplication.
    pub fn equiv(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }

    /// Fully reduced form: numerator and denominator coprime, denominator
    /// primitive with positive leading coefficient and nonzero constant term.
    pub fn canonical(&self) -> Self {
        if self.num.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() {
            return self.clone();
        }
        let g = dense::gcd(self.num.int_coeffs(), self.den.int_coeffs());
        if g.len() <= 1 {
            return self.clone();
        }
        let num = self.num.div_dense_exact(&g).expect("gcd divides numerator");
        let den = self.den.div_dense_exact(&g).expect("gcd divides denominator");
        Self::from_normalized_parts(num, den)
    }

    pub fn is_canonical(&self) -> bool {
        self.den.is_one() || dense::gcd(self.num.int_coeffs(), self.den.int_coeffs()).len() <= 1
    }

    /// Exact value at `q = q0`. A vanishing denominator is retried on the
    /// reduced form before it is reported as a pole.
    pub fn eval(&self, q0: &Rational) -> Result<Rational> {
        let d = self.den.eval(q0)?;
        if !d.is_zero() {
            return Ok(self.num.eval(q0)? / d);
        }
        let c = self.canonical();
        let d = c.den.eval(q0)?;
        if d.is_zero() {
            return Err(Error::Pole {
                at: format_rational(q0),
                detail: format!("denominator {} vanishes", c.den.to_pretty()),
            });
        }
        Ok(c.num.eval(q0)? / d)
    }

    /// Value at `q = 1` of the reduced form.
    pub fn limit_at_one(&self) -> Result<Rational> {
        let d = self.den.eval_at_one();
        if !d.is_zero() {
            return Ok(self.num.eval_at_one() / d);
        }
        let c = self.canonical();
        let d = c.den.eval_at_one();
        if d.is_zero() {
            return Err(Error::Pole {
                at: "1".into(),
                detail: format!("denominator {} vanishes after cancellation", c.den.to_pretty()),
            });
        }
        Ok(c.num.eval_at_one() / d)
    }

    /// Pretty string of the canonical form: `num/den`, den omitted when 1.
    pub fn to_pretty(&self) -> String {
        let c = self.canonical();
        let num = c.num.to_pretty();
        if c.den.is_one() {
            return num;
        }
        let num = if c.num.num_terms() > 1 { format!("({num})") } else { num };
        let den = c.den.to_pretty();
        let den = if c.den.num_terms() > 1 { format!("({den})") } else { den };
        format!("{num}/{den}")
    }

    /// Writes every item over the least common multiple `L` of their
    /// denominators: returns `(N_i, L)` with `items[i] = N_i / L`.
    pub fn over_common_denominator(items: &[RatFun]) -> (Vec<LaurentPoly>, LaurentPoly) {
        let mut lcm: Dense = vec![BigInt::one()];
        for f in items {
            let d = f.den.int_coeffs();
            let g = dense::gcd(&lcm, d);
            lcm = dense::mul(&lcm, &dense::div_exact(d, &g).expect("gcd divides"));
        }
        let nums = items
            .iter()
            .map(|f| f.num.mul_dense(&dense::div_exact(&lcm, f.den.int_coeffs()).expect("lcm is a multiple")))
            .collect();
        (nums, LaurentPoly::from_parts(0, lcm, BigInt::one()))
    }

    /// Multiplies two den-normalized parts, cancelling `gcd(a_num, b_den)`
    /// and `gcd(b_num, a_den)` first.
    fn mul_cancel(a: &Self, b: &Self) -> Self {
        if a.is_zero() || b.is_zero() {
            return Self::zero();
        }
        let (mut an, mut bd) = (a.num.clone(), b.den.clone());
        if !bd.is_one() && an.span() > 0 {
            let g = dense::gcd(an.int_coeffs(), bd.int_coeffs());
            if g.len() > 1 {
                an = an.div_dense_exact(&g).expect("gcd divides");
                bd = bd.div_dense_exact(&g).expect("gcd divides");
            }
        }
        let (mut bn, mut ad) = (b.num.clone(), a.den.clone());
        if !ad.is_one() && bn.span() > 0 {
            let g = dense::gcd(bn.int_coeffs(), ad.int_coeffs());
            if g.len() > 1 {
                bn = bn.div_dense_exact(&g).expect("gcd divides");
                ad = ad.div_dense_exact(&g).expect("gcd divides");
            }
        }
        // products of primitive polynomials with positive leading coefficient
        // keep that property, so no renormalization of the denominator
        RatFun { num: &an * &bn, den: &ad * &bd }
    }

    fn add_impl(a: &Self, b: &Self, negate_b: bool) -> Self {
        let bn = if negate_b { -&b.num } else { b.num.clone() };
        if b.is_zero() {
            return a.clone();
        }
        if a.is_zero() {
            return RatFun { num: bn, den: b.den.clone() };
        }
        if a.den == b.den {
            return RatFun { num: &a.num + &bn, den: a.den.clone() }.fix_zero();
        }
        if b.den.is_one() {
            return RatFun { num: &a.num + &(&bn * &a.den), den: a.den.clone() }.fix_zero();
        }
        if a.den.is_one() {
            return RatFun { num: &(&a.num * &b.den) + &bn, den: b.den.clone() }.fix_zero();
        }
        let g = dense::gcd(a.den.int_coeffs(), b.den.int_coeffs());
        let a_co = dense::div_exact(a.den.int_coeffs(), &g).expect("gcd divides");
        let b_co = dense::div_exact(b.den.int_coeffs(), &g).expect("gcd divides");
        let num = &a.num.mul_dense(&b_co) + &bn.mul_dense(&a_co);
        let den = a.den.mul_dense(&b_co);
        RatFun { num, den }.fix_zero()
    }
}

impl Default for RatFun {
    fn default() -> Self {
        Self::zero()
    }
}

impl PartialEq for RatFun {
    fn eq(&self, other: &Self) -> bool {
        self.equiv(other)
    }
}

impl Eq for RatFun {}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun(({})/({}))", self.num.to_pretty(), self.den.to_pretty())
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pretty())
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        RatFun::add_impl(self, rhs, false)
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        RatFun::add_impl(self, rhs, true)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        RatFun::mul_cancel(self, rhs)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

forward_owned!(Add, add, RatFun);
forward_owned!(Sub, sub, RatFun);
forward_owned!(Mul, mul, RatFun);

impl std::iter::Sum for RatFun {
    fn sum<I: Iterator<Item = RatFun>>(iter: I) -> RatFun {
        iter.fold(RatFun::zero(), |acc, x| &acc + &x)
    }
}

impl std::iter::Product for RatFun {
    fn product<I: Iterator<Item = RatFun>>(iter: I) -> RatFun {
        iter.fold(RatFun::one(), |acc, x| &acc * &x)
    }
}

impl From<LaurentPoly> for RatFun {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

#[derive(Serialize, Deserialize)]
struct RatFunJson {
    num: LaurentPoly,
    den: LaurentPoly,
}

/// Serializes the canonical form as `{"num": [...], "den": [...]}`.
impl Serialize for RatFun {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let c = self.canonical();
        RatFunJson { num: c.num, den: c.den }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFun {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = RatFunJson::deserialize(d)?;
        RatFun::new(j.num, j.den).map_err(serde::de::Error::custom)
    }
}
