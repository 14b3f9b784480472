//! Closed forms for the Carlitz q-Bernoulli family and the classical oracle.
//!
//! Arguments are carried in scaled form. A query in base `q^w` with scaled
//! argument `A` stands for the polynomial argument `A / w`, so that every
//! `q^{w * l * (A/w)}` is the integral power `q^{lA}`. The symmetry
//! identities evaluate arguments such as `w2 x + (w2/w1) (j_1 + ... + j_r)`
//! in base `q^{w1}`, which become `A = w1 w2 x + w2 (j_1 + ... + j_r)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, LaurentPoly, RatFun, Rational, DEFAULT_MAX_SPAN};
use crate::error::{Error, Result};
use crate::qcore::{q_bracket_poly, BaseExp};

/// Parameters of `beta^{(r)}_{n, q^w}(A / w)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BetaQuery {
    pub n: u32,
    pub r: u32,
    pub w: BaseExp,
    /// Scaled argument `A`.
    pub arg: i64,
}

impl BetaQuery {
    pub fn new(n: u32, r: u32, w: u32, arg: i64) -> Result<Self> {
        let q = BetaQuery { n, r, w: BaseExp::new(w)?, arg };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if self.r == 0 {
            return Err(Error::Domain("order r must be at least 1".into()));
        }
        check_projected_span(self.n, self.r, self.w, self.arg)
    }
}

/// Parameters of the weighted family `beta^{(h,r)}_{n, q^w}(A / w)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightedBetaQuery {
    pub n: u32,
    pub h: i64,
    pub r: u32,
    pub w: BaseExp,
    pub arg: i64,
}

impl WeightedBetaQuery {
    pub fn new(n: u32, h: i64, r: u32, w: u32, arg: i64) -> Result<Self> {
        let q = WeightedBetaQuery { n, h, r, w: BaseExp::new(w)?, arg };
        q.validate()?;
        Ok(q)
    }

    /// Requires `j + h - k != 0` for all `0 <= j <= n`, `0 <= k < r`,
    /// i.e. `h > r - 1` or `h < -n`.
    pub fn validate(&self) -> Result<()> {
        if self.r == 0 {
            return Err(Error::Domain("order r must be at least 1".into()));
        }
        if let Some((j, k)) = degenerate_factor(self.n, self.h, self.r) {
            return Err(Error::Degenerate { n: self.n, h: self.h, r: self.r, j, k });
        }
        check_projected_span(self.n, self.r, self.w, self.arg + self.h.abs())
    }

    pub fn is_degenerate(n: u32, h: i64, r: u32) -> bool {
        degenerate_factor(n, h, r).is_some()
    }
}

fn degenerate_factor(n: u32, h: i64, r: u32) -> Option<(u32, u32)> {
    // j + h - k = 0 with j in [0, n], k in [0, r) means k = j + h
    (0..=n).find_map(|j| {
        let k = j as i64 + h;
        (0..r as i64).contains(&k).then_some((j, k as u32))
    })
}

fn check_projected_span(n: u32, r: u32, w: BaseExp, arg: i64) -> Result<()> {
    let (n, r, w) = (n as u64, r as u64, w.get() as u64);
    let projected = n
        .saturating_mul(arg.unsigned_abs())
        .saturating_add(w.saturating_mul(n + r.saturating_mul(n + 1).saturating_mul(n + 2) / 2));
    if projected > DEFAULT_MAX_SPAN {
        return Err(Error::Resource(format!(
            "query would produce exponent span about {projected} (limit {DEFAULT_MAX_SPAN})"
        )));
    }
    Ok(())
}

/// `(1/(1-Q)^n) * sum_l c_l q^{l*arg} / D_l(Q)` with `Q = q^w`.
///
/// The per-term fractions only involve `Q`, so they are put over their least
/// common denominator in the variable `Q` (small degrees) and the result is
/// lifted to `q` by exponent scaling afterwards.
fn alternating_sum(n: u32, w: BaseExp, arg: i64, terms: &[RatFun]) -> RatFun {
    let (nums, lcm) = RatFun::over_common_denominator(terms);
    let wq = w.get();
    let mut num = LaurentPoly::zero();
    for (l, n_l) in nums.iter().enumerate() {
        num = &num + &n_l.substitute_power(wq).shift(l as i64 * arg);
    }
    let one_minus = &LaurentPoly::one() - &LaurentPoly::q_pow(wq as i64);
    let den = &one_minus.pow(n) * &lcm.substitute_power(wq);
    RatFun::new(num, den).expect("nonzero denominator")
}

/// `beta^{(r)}_{n,q^w}(A/w) = (1/(1-q^w)^n) sum_{l=0}^n C(n,l) (-1)^l q^{lA} ((l+1)/[l+1]_{q^w})^r`.
pub fn beta_higher(qr: &BetaQuery) -> Result<RatFun> {
    qr.validate()?;
    let unit = BaseExp::ONE;
    let terms: Vec<RatFun> = (0..=qr.n)
        .map(|l| {
            let sign = if l % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            let c = binomial(qr.n, l) * sign * num_traits::pow(BigInt::from(l + 1), qr.r as usize);
            let den = q_bracket_poly(l as i64 + 1, unit).pow(qr.r);
            RatFun::new(LaurentPoly::constant(Rational::from_integer(c)), den).expect("bracket is nonzero")
        })
        .collect();
    Ok(alternating_sum(qr.n, qr.w, qr.arg, &terms))
}

/// Carlitz q-Bernoulli number `beta_{n,q}`.
pub fn beta_number(n: u32) -> RatFun {
    beta_higher(&BetaQuery { n, r: 1, w: BaseExp::ONE, arg: 0 }).expect("small query")
}

/// Weighted family: `(1/(1-q^w)^n) sum_j C(n,j) (-1)^j q^{jA} prod_{k<r} (j+h-k)/[j+h-k]_{q^w}`.
pub fn beta_weighted(qr: &WeightedBetaQuery) -> Result<RatFun> {
    qr.validate()?;
    let unit = BaseExp::ONE;
    let terms: Vec<RatFun> = (0..=qr.n)
        .map(|j| {
            let sign = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            let mut c = binomial(qr.n, j) * sign;
            let mut den = LaurentPoly::one();
            for k in 0..qr.r as i64 {
                let m = j as i64 + qr.h - k;
                c *= BigInt::from(m);
                den = &den * &q_bracket_poly(m, unit);
            }
            RatFun::new(LaurentPoly::constant(Rational::from_integer(c)), den).expect("validated nondegenerate")
        })
        .collect();
    Ok(alternating_sum(qr.n, qr.w, qr.arg, &terms))
}

fn check_t_params(n: u32, i: u32, r: u32, wlim: u32) -> Result<()> {
    if i > n {
        return Err(Error::Domain(format!("T-sum needs 0 <= i <= n (got i={i}, n={n})")));
    }
    if r == 0 || wlim == 0 {
        return Err(Error::Domain("T-sum needs r >= 1 and w >= 1".into()));
    }
    let tuples = (wlim as u64).checked_pow(r).unwrap_or(u64::MAX);
    if tuples > 1_000_000 {
        return Err(Error::Resource(format!("T-sum over {wlim}^{r} index tuples")));
    }
    Ok(())
}

/// `sum over (j_1..j_r) in [0,wlim)^r` of `coef * [s]^{n-i}_{q^b} q^{b e}`
/// where `s = sum j` and `e = exponent(j)`; tuples are grouped by `(s, e)`.
fn grouped_t_sum(n: u32, i: u32, r: u32, wlim: u32, b: BaseExp, exponent: impl Fn(&[u32]) -> i64) -> RatFun {
    let mut groups: BTreeMap<(u32, i64), u64> = BTreeMap::new();
    let mut idx = vec![0u32; r as usize];
    loop {
        let s: u32 = idx.iter().sum();
        *groups.entry((s, exponent(&idx))).or_default() += 1;
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return finish_t_sum(groups, n - i, b);
            }
            idx[pos] += 1;
            if idx[pos] < wlim {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn finish_t_sum(groups: BTreeMap<(u32, i64), u64>, power: u32, b: BaseExp) -> RatFun {
    let mut powers: BTreeMap<u32, LaurentPoly> = BTreeMap::new();
    let mut acc = LaurentPoly::zero();
    let bq = b.get() as i64;
    for ((s, e), count) in groups {
        // 0^0 = 1: the empty bracket survives only when power == 0
        let bp = powers.entry(s).or_insert_with(|| q_bracket_poly(s as i64, b).pow(power));
        if bp.is_zero() {
            continue;
        }
        let term = bp.shift(bq * e).scale(&Rational::from_integer(BigInt::from(count)));
        acc = &acc + &term;
    }
    RatFun::from_poly(acc)
}

/// `T^{(r)}_{n,i}(wlim | q^b) = sum_{j in [0,wlim)^r} [j_1+...+j_r]_{q^b}^{n-i} q^{b(i+1)(j_1+...+j_r)}`.
pub fn t_sum(n: u32, i: u32, r: u32, wlim: u32, b: BaseExp) -> Result<RatFun> {
    t_sum_with_step_offset(n, i, r, wlim, b, 0)
}

/// [`t_sum`] with the weight exponent `i + 1` replaced by `i + 1 + offset`.
/// Only the checker-integrity hook uses a nonzero offset.
pub(crate) fn t_sum_with_step_offset(n: u32, i: u32, r: u32, wlim: u32, b: BaseExp, offset: i64) -> Result<RatFun> {
    check_t_params(n, i, r, wlim)?;
    let step = i as i64 + 1 + offset;
    Ok(grouped_t_sum(n, i, r, wlim, b, |j| step * j.iter().map(|&x| x as i64).sum::<i64>()))
}

/// `T^{(h,r)}_{n,i}(wlim | q^b) = sum_j [j_1+...+j_r]_{q^b}^{n-i} q^{b sum_l (i+h-l+1) j_l}`.
pub fn t_sum_h(n: u32, i: u32, h: i64, r: u32, wlim: u32, b: BaseExp) -> Result<RatFun> {
    check_t_params(n, i, r, wlim)?;
    Ok(grouped_t_sum(n, i, r, wlim, b, |j| {
        j.iter().enumerate().map(|(pos, &x)| (i as i64 + h - (pos as i64 + 1) + 1) * x as i64).sum()
    }))
}

/// Classical Bernoulli numbers `B_0..=B_n` from `(B+1)^m - B_m = [m = 1]`.
pub fn classical_bernoulli_numbers(n: u32) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n as usize + 1);
    b.push(Rational::one());
    for m in 1..=n {
        // sum_{k=0}^{m} C(m+1,k) B_k = 0
        let s: Rational = (0..m).map(|k| Rational::from_integer(binomial(m + 1, k)) * &b[k as usize]).sum();
        b.push(-s / Rational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// `B^{(r)}_n(x)`: coefficient of `t^n/n!` in `(t/(e^t-1))^r e^{xt}`,
/// by exact truncated power series.
pub fn classical_bernoulli_higher(n: u32, r: u32, x: &Rational) -> Result<Rational> {
    if r == 0 {
        return Err(Error::Domain("order r must be at least 1".into()));
    }
    let len = n as usize + 1;
    let mut fact = vec![Rational::one(); len];
    for k in 1..len {
        fact[k] = &fact[k - 1] * Rational::from_integer(BigInt::from(k));
    }
    let base: Vec<Rational> = classical_bernoulli_numbers(n).into_iter().zip(&fact).map(|(b, f)| b / f).collect();
    let mut series = vec![Rational::zero(); len];
    series[0] = Rational::one();
    for _ in 0..r {
        series = truncated_product(&series, &base);
    }
    let mut xpow = Rational::one();
    let exp_series: Vec<Rational> = (0..len)
        .map(|k| {
            let term = &xpow / &fact[k];
            xpow *= x;
            term
        })
        .collect();
    let full = truncated_product(&series, &exp_series);
    Ok(&full[n as usize] * &fact[n as usize])
}

fn truncated_product(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let len = a.len();
    (0..len).map(|k| (0..=k).map(|j| &a[j] * &b[k - j]).sum()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, int};
    use crate::qcore::{q_bracket, q_factorial};

    fn w(x: u32) -> BaseExp {
        BaseExp::new(x).unwrap()
    }

    fn higher(n: u32, r: u32, wq: u32, arg: i64) -> RatFun {
        beta_higher(&BetaQuery::new(n, r, wq, arg).unwrap()).unwrap()
    }

    fn weighted(n: u32, h: i64, r: u32, wq: u32, arg: i64) -> RatFun {
        beta_weighted(&WeightedBetaQuery::new(n, h, r, wq, arg).unwrap()).unwrap()
    }

    /// Independent route: solve q (q beta + 1)^n - beta_n = [n = 1] for beta_n.
    fn carlitz_recurrence_oracle(n_max: u32) -> Vec<RatFun> {
        let mut betas = vec![RatFun::one()];
        for n in 1..=n_max {
            // beta_n (q^{n+1} - 1) = [n=1] - q sum_{l<n} C(n,l) q^l beta_l
            let mut rhs = if n == 1 { RatFun::one() } else { RatFun::zero() };
            for (l, b) in betas.iter().enumerate() {
                let c = Rational::from_integer(binomial(n, l as u32));
                rhs = &rhs - &b.shift(l as i64 + 1).scale(&c);
            }
            let coeff = &RatFun::q_pow(n as i64 + 1) - &RatFun::one();
            betas.push(rhs.checked_div(&coeff).unwrap().canonical());
        }
        betas
    }

    #[test]
    fn n_zero_is_one() {
        for r in 1..=3 {
            for wq in 1..=3 {
                for a in [-2, 0, 5] {
                    assert_eq!(higher(0, r, wq, a), RatFun::one());
                }
            }
        }
    }

    #[test]
    fn beta_numbers_match_carlitz_recurrence() {
        let oracle = carlitz_recurrence_oracle(8);
        for (n, expected) in oracle.iter().enumerate() {
            assert_eq!(&beta_number(n as u32), expected, "n={n}");
        }
        // beta_1 = -1/(1+q), derived by hand from the n = 1 recurrence
        let b1 = RatFun::new(LaurentPoly::from_int_coeffs(0, &[-1]), LaurentPoly::from_int_coeffs(0, &[1, 1])).unwrap();
        assert_eq!(beta_number(1), b1);
        assert_eq!(oracle[1], b1);
    }

    #[test]
    fn classical_limits_of_numbers() {
        assert_eq!(beta_number(1).limit_at_one().unwrap(), frac(-1, 2));
        assert_eq!(higher(2, 1, 1, 0).limit_at_one().unwrap(), frac(1, 6));
        assert_eq!(beta_number(1).eval(&int(6)).unwrap(), frac(-1, 7));
    }

    #[test]
    fn classical_oracle_values() {
        let b = classical_bernoulli_numbers(8);
        assert_eq!(b[1], frac(-1, 2));
        assert_eq!(b[2], frac(1, 6));
        assert_eq!(b[3], int(0));
        assert_eq!(b[4], frac(-1, 30));
        assert_eq!(b[6], frac(1, 42));
        assert_eq!(b[8], frac(-1, 30));
        assert_eq!(classical_bernoulli_higher(0, 3, &int(2)).unwrap(), int(1));
        assert_eq!(classical_bernoulli_higher(1, 1, &int(0)).unwrap(), frac(-1, 2));
        assert_eq!(classical_bernoulli_higher(1, 2, &int(0)).unwrap(), int(-1));
        // B_2(x) = x^2 - x + 1/6
        assert_eq!(classical_bernoulli_higher(2, 1, &int(3)).unwrap(), frac(37, 6));
        // B_2^{(2)}(0) = 5/6: coefficient of t^2/2! in (t/(e^t-1))^2
        assert_eq!(classical_bernoulli_higher(2, 2, &int(0)).unwrap(), frac(5, 6));
    }

    #[test]
    fn higher_order_tends_to_classical() {
        for n in 0..=6 {
            for r in 1..=3 {
                for x in 0..=2i64 {
                    let lim = higher(n, r, 1, x).limit_at_one().unwrap();
                    assert_eq!(lim, classical_bernoulli_higher(n, r, &int(x)).unwrap(), "n={n} r={r} x={x}");
                }
            }
        }
    }

    #[test]
    fn binomial_expansion_in_x() {
        for n in 0..=6u32 {
            for x in 0..=3i64 {
                let mut rhs = RatFun::zero();
                let bx = q_bracket(x, w(1));
                for l in 0..=n {
                    let term = &beta_number(l).shift(l as i64 * x) * &bx.pow((n - l) as i64).unwrap();
                    rhs = &rhs + &term.scale(&Rational::from_integer(binomial(n, l)));
                }
                assert_eq!(higher(n, 1, 1, x), rhs, "n={n} x={x}");
            }
        }
    }

    #[test]
    fn base_substitution_consistency() {
        // beta in base q^w at scaled argument w*x is beta at argument x with q -> q^w
        for n in 0..=4 {
            for wq in 1..=3u32 {
                let direct = higher(n, 2, wq, wq as i64 * 2);
                let substituted = higher(n, 2, 1, 2).substitute_power(wq);
                assert_eq!(direct, substituted);
            }
        }
    }

    #[test]
    fn weighted_bridge_and_telescoping() {
        for n in 0..=6 {
            for x in 0..=2 {
                assert_eq!(weighted(n, 1, 1, 1, x), higher(n, 1, 1, x));
            }
        }
        for r in 1..=4u32 {
            for wq in 1..=3u32 {
                let fact = Rational::from_integer((1..=r as i64).product::<i64>().into());
                let expected = q_factorial(r, w(wq)).inv().unwrap().scale(&fact);
                assert_eq!(weighted(0, r as i64, r, wq, 0), expected);
            }
        }
    }

    #[test]
    fn weighted_degeneracy() {
        let err = WeightedBetaQuery::new(1, 0, 1, 1, 0).unwrap_err();
        assert!(matches!(err, Error::Degenerate { j: 0, k: 0, .. }));
        assert!(WeightedBetaQuery::new(2, -1, 2, 1, 0).is_err());
        assert!(WeightedBetaQuery::new(2, -3, 2, 1, 0).is_ok());
        assert!(WeightedBetaQuery::new(2, 2, 3, 1, 0).is_err());
        assert!(WeightedBetaQuery::new(2, 3, 3, 1, 0).is_ok());
    }

    #[test]
    fn weighted_negative_h_is_laurent() {
        // h < -n: every factor j+h-k is negative; the value stays finite at q = 1
        let v = weighted(2, -4, 2, 1, 1);
        assert!(v.limit_at_one().is_ok());
    }

    /// Brute-force enumeration of the r-fold index box.
    fn t_sum_brute(n: u32, i: u32, r: u32, wlim: u32, b: u32, weight: impl Fn(usize) -> i64) -> RatFun {
        let total = (wlim as usize).pow(r);
        let mut acc = RatFun::zero();
        for code in 0..total {
            let mut c = code;
            let mut s = 0i64;
            let mut e = 0i64;
            for l in 0..r as usize {
                let j = (c % wlim as usize) as i64;
                c /= wlim as usize;
                s += j;
                e += weight(l) * j;
            }
            let bracket = q_bracket(s, w(b));
            let p = if n == i { RatFun::one() } else { bracket.pow((n - i) as i64).unwrap() };
            acc = &acc + &p.shift(b as i64 * e);
        }
        acc
    }

    #[test]
    fn t_sum_against_brute_force() {
        for n in 0..=3 {
            for i in 0..=n {
                for r in 1..=3 {
                    for wlim in 1..=3 {
                        for b in 1..=2 {
                            let fast = t_sum(n, i, r, wlim, w(b)).unwrap();
                            let slow = t_sum_brute(n, i, r, wlim, b, |_| i as i64 + 1);
                            assert_eq!(fast, slow, "n={n} i={i} r={r} wlim={wlim} b={b}");
                            for h in [-2i64, 1, 3] {
                                let fast = t_sum_h(n, i, h, r, wlim, w(b)).unwrap();
                                let slow = t_sum_brute(n, i, r, wlim, b, |l| i as i64 + h - (l as i64 + 1) + 1);
                                assert_eq!(fast, slow, "h={h}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn t_sum_examples() {
        for n in 0..=3 {
            for i in 0..=n {
                let delta = if i == n { RatFun::one() } else { RatFun::zero() };
                assert_eq!(t_sum(n, i, 2, 1, w(2)).unwrap(), delta);
                assert_eq!(t_sum_h(n, i, 5, 3, 1, w(1)).unwrap(), delta);
            }
        }
        // i = n: r independent geometric sums
        for n in 0..=3u32 {
            for r in 1..=3 {
                let g = q_bracket(3, w(2 * (n + 1))).pow(r as i64).unwrap();
                assert_eq!(t_sum(n, n, r, 3, w(2)).unwrap(), g);
            }
        }
        assert_eq!(t_sum(1, 0, 1, 2, w(1)).unwrap(), RatFun::q_pow(1));
        // r = 1, h = 1 agrees with the unweighted sum
        assert_eq!(t_sum_h(3, 1, 1, 1, 3, w(2)).unwrap(), t_sum(3, 1, 1, 3, w(2)).unwrap());
        // n = i, r = 2, wlim = 2: (1 + q^{i+h}) (1 + q^{i+h-1})
        let (i, h) = (1i64, 2i64);
        let expected = &(&RatFun::one() + &RatFun::q_pow(i + h)) * &(&RatFun::one() + &RatFun::q_pow(i + h - 1));
        assert_eq!(t_sum_h(1, 1, h, 2, 2, w(1)).unwrap(), expected);
        assert!(t_sum(1, 2, 1, 2, w(1)).is_err());
    }

    #[test]
    fn oversized_query_rejected() {
        assert!(matches!(BetaQuery::new(12, 4, 6, 1_000_000), Err(Error::Resource(_))));
        assert!(BetaQuery::new(3, 0, 1, 0).is_err());
    }
}
