//! Finite-N q-Volkenborn Riemann sums over `Z_p`, computed exactly at a
//! rational `q0`, and p-adic convergence reports against the closed forms.
//!
//! No truncated p-adic type is involved: every sum is an exact rational and
//! closeness is read off the p-adic valuation of a difference.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::arith::{format_rational, int, rational_pow, Rational};
use crate::error::{Error, Result};
use crate::qbernoulli::{beta_higher, beta_weighted, BetaQuery, WeightedBetaQuery};

/// Default cap on the number of summands `p^{rN}` of one Riemann sum.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A p-adic valuation; `Infinite` is the valuation of zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => v.fmt(f),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// Finite values as JSON integers, `+inf` as the string `"inf"`.
impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_i64(*v),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

fn int_valuation(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// `v_p(r)`, with `Valuation::Infinite` for zero.
pub fn p_valuation(r: &Rational, p: u64) -> Result<Valuation> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("p = {p} is not prime")));
    }
    if r.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let pb = BigInt::from(p);
    Ok(Valuation::Finite(int_valuation(r.numer(), &pb) - int_valuation(r.denom(), &pb)))
}

/// Prime, evaluation point and depth of a convergence study.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicContext {
    p: u64,
    q0: Rational,
    n_max: u32,
    budget: u64,
}

impl PadicContext {
    /// `q0 = None` picks `1 + p` for odd `p` and `5` for `p = 2`.
    pub fn new(p: u64, q0: Option<Rational>, n_max: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Domain(format!("p = {p} is not prime")));
        }
        if n_max == 0 {
            return Err(Error::Domain("Nmax must be at least 1".into()));
        }
        let q0 = q0.unwrap_or_else(|| if p == 2 { int(5) } else { int(p as i64 + 1) });
        let need = if p == 2 { 2 } else { 1 };
        match p_valuation(&(Rational::one() - &q0), p)? {
            Valuation::Infinite => return Err(Error::Domain("q0 = 1 is not allowed".into())),
            Valuation::Finite(v) if v < need => {
                return Err(Error::Domain(format!(
                    "q0 = {} violates v_{p}(1 - q0) >= {need} (got {v})",
                    format_rational(&q0)
                )))
            }
            Valuation::Finite(_) => {}
        }
        Ok(PadicContext { p, q0, n_max, budget: DEFAULT_BUDGET })
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q0(&self) -> &Rational {
        &self.q0
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// `p^N` after checking `1 <= N <= Nmax` and `p^{rN} <= budget`.
    fn grid_side(&self, r: u32, big_n: u32) -> Result<u64> {
        if big_n == 0 || big_n > self.n_max {
            return Err(Error::Domain(format!("N = {big_n} outside 1..={}", self.n_max)));
        }
        if r == 0 {
            return Err(Error::Domain("order r must be at least 1".into()));
        }
        let over =
            || Error::Resource(format!("grid p^(rN) = {}^{} exceeds the budget {}", self.p, r * big_n, self.budget));
        let side = self.p.checked_pow(big_n).ok_or_else(over)?;
        let total = side.checked_pow(r).ok_or_else(over)?;
        if total > self.budget {
            return Err(over());
        }
        Ok(side)
    }
}

/// `[m]_{q0}` for any integer `m`.
fn bracket_at(m: i64, q0: &Rational) -> Result<Rational> {
    Ok((Rational::one() - rational_pow(q0, m)?) / (Rational::one() - q0))
}

/// Powers `a^k` and `b^k` of the numerator and denominator of `q0`.
struct PowerTable {
    a: Vec<BigInt>,
    b: Vec<BigInt>,
}

impl PowerTable {
    fn new(q0: &Rational, max: usize) -> Self {
        let build = |base: &BigInt| {
            let mut v = Vec::with_capacity(max + 1);
            let mut acc = BigInt::one();
            for _ in 0..=max {
                v.push(acc.clone());
                acc *= base;
            }
            v
        };
        PowerTable { a: build(q0.numer()), b: build(q0.denom()) }
    }

    /// Numerators of `q0^e` for `e` in `[lo, hi]` (with `lo <= 0 <= hi`)
    /// over the common denominator `a^{-lo} b^{hi}`.
    fn scaled_power(&self, e: i64, lo: i64, hi: i64) -> BigInt {
        &self.a[(e - lo) as usize] * &self.b[(hi - e) as usize]
    }
}

/// `(1/[M]^r) sum_{y in [0,M)^r} [x + sum y]^n q0^{sum_l c_l y_l}` where
/// `M = p^N` and `c_l` is the per-coordinate exponent.
///
/// Everything runs on integer numerators over one common denominator, so no
/// gcd is taken until the very end. The r-fold sum is folded one coordinate
/// at a time into a table indexed by the partial sum `s = y_1 + ... + y_l`;
/// each fold and the final contraction against `[x + s]^n` are split across
/// threads, and every output entry is reduced in a fixed order.
fn weighted_grid_sum(n: u32, x: i64, ctx: &PadicContext, big_n: u32, exps: &[i64]) -> Result<Rational> {
    let side = ctx.grid_side(exps.len() as u32, big_n)? as usize;
    let r = exps.len();
    let top = (side - 1) as i64;
    let (m_lo, m_hi) = (x.min(0), (x + r as i64 * top).max(0));
    let max_pow =
        exps.iter().map(|c| (c.unsigned_abs() as i64) * top).chain([m_hi - m_lo, side as i64]).max().unwrap_or(0)
            as usize;
    let pw = PowerTable::new(&ctx.q0, max_pow);

    // weights: coordinate l contributes q0^{c_l y} = w_l[y] / d_l
    let mut den = BigInt::one();
    let mut table: Vec<BigInt> = vec![BigInt::one()];
    for &c in exps {
        let (lo, hi) = if c >= 0 { (0, c * top) } else { (c * top, 0) };
        let weights: Vec<BigInt> = (0..side as i64).map(|y| pw.scaled_power(c * y, lo, hi)).collect();
        den *= &pw.a[(-lo) as usize] * &pw.b[hi as usize];
        let len = table.len() + side - 1;
        table = (0..len)
            .into_par_iter()
            .map(|t| {
                let first = t.saturating_sub(side - 1);
                let last = t.min(table.len() - 1);
                let mut acc = BigInt::zero();
                for s in first..=last {
                    acc += &table[s] * &weights[t - s];
                }
                acc
            })
            .collect();
    }

    // [m]_{q0} = (1 - q0^m) / (1 - q0); 1 - q0^m = u_m / (a^{-m_lo} b^{m_hi})
    let common = &pw.a[(-m_lo) as usize] * &pw.b[m_hi as usize];
    let total: BigInt = table
        .par_iter()
        .enumerate()
        .map(|(s, t)| {
            let m = x + s as i64;
            let u = &common - pw.scaled_power(m, m_lo, m_hi);
            t * num_traits::pow(u, n as usize)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum();
    let one_minus = Rational::one() - &ctx.q0;
    let scale =
        Rational::from_integer(den * num_traits::pow(common, n as usize)) * num_traits::pow(one_minus, n as usize);
    let m = bracket_at(side as i64, &ctx.q0)?;
    Ok(Rational::new(total, BigInt::one()) / scale / num_traits::pow(m, r))
}

/// `S_N = (1/[p^N]_{q0})^r sum_{y_1..y_r < p^N} [x + y_1 + ... + y_r]^n_{q0} q0^{y_1 + ... + y_r}`.
pub fn riemann_sum_multi(n: u32, r: u32, x: i64, ctx: &PadicContext, big_n: u32) -> Result<Rational> {
    weighted_grid_sum(n, x, ctx, big_n, &vec![1; r as usize])
}

/// Same grid with the extra weight `q0^{sum_l (h - l) y_l}`, so coordinate
/// `l` carries `q0^{(h - l + 1) y_l}`. Degenerate `h` is allowed here.
pub fn riemann_sum_weighted(n: u32, h: i64, r: u32, x: i64, ctx: &PadicContext, big_n: u32) -> Result<Rational> {
    let exps: Vec<i64> = (1..=r as i64).map(|l| h - l + 1).collect();
    weighted_grid_sum(n, x, ctx, big_n, &exps)
}

/// `q0 S_N([1 + y]^n) - S_N([y]^n)` for the single-variable sum. As `N`
/// grows it tends to `q0 - 1`, `1`, `0` for `n = 0`, `n = 1`, `n >= 2`.
pub fn shift_defect(n: u32, ctx: &PadicContext, big_n: u32) -> Result<Rational> {
    let shifted = riemann_sum_multi(n, 1, 1, ctx, big_n)?;
    let plain = riemann_sum_multi(n, 1, 0, ctx, big_n)?;
    Ok(&ctx.q0 * shifted - plain)
}

/// The value `shift_defect` tends to.
pub fn shift_target(n: u32, q0: &Rational) -> Rational {
    match n {
        0 => q0 - Rational::one(),
        1 => Rational::one(),
        _ => Rational::zero(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Single,
    Multi,
    Weighted,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "single" => Ok(Family::Single),
            "multi" => Ok(Family::Multi),
            "weighted" => Ok(Family::Weighted),
            _ => Err(Error::Domain(format!("unknown family {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VolkenbornParams {
    pub n: u32,
    pub r: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub h: Option<i64>,
    pub x: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvergenceReport {
    pub family: Family,
    pub params: VolkenbornParams,
    #[serde(skip)]
    pub target: String,
    pub p: u64,
    #[serde(serialize_with = "ser_rational")]
    pub q0: Rational,
    /// `(N, v_p(S_N - closed form))` for `N = 1..=Nmax`.
    pub points: Vec<(u32, Valuation)>,
    pub monotone: bool,
}

fn ser_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

impl ConvergenceReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn last_valuation(&self) -> Option<Valuation> {
        self.points.last().map(|&(_, v)| v)
    }
}

/// Computes `S_N` for `N = 1..=Nmax` and compares each with the closed form
/// evaluated at `q0`. `single` forces `r = 1` and ignores `h`.
pub fn convergence_report(family: Family, params: VolkenbornParams, ctx: &PadicContext) -> Result<ConvergenceReport> {
    let VolkenbornParams { n, x, .. } = params;
    let r_eff = if family == Family::Single { 1 } else { params.r };
    // reject an oversized grid before any sum is computed
    ctx.grid_side(r_eff, ctx.n_max)?;
    let (params, target, closed) = match family {
        Family::Single | Family::Multi => {
            let r = if family == Family::Single { 1 } else { params.r };
            let beta = beta_higher(&BetaQuery::new(n, r, 1, x)?)?;
            let target = format!("[x+y_1+...+y_{r}]^{n} against beta^({r})_{n}({x})");
            (VolkenbornParams { n, r, h: None, x }, target, beta)
        }
        Family::Weighted => {
            let h = params.h.ok_or_else(|| Error::Domain("the weighted family needs h".into()))?;
            let beta = beta_weighted(&WeightedBetaQuery::new(n, h, params.r, 1, x)?)?;
            let target = format!("weight q^(sum (h-l) y_l) with h={h} against beta^({h},{})_{n}({x})", params.r);
            (params, target, beta)
        }
    };
    let exact = closed.eval(&ctx.q0)?;
    let points = (1..=ctx.n_max)
        .map(|big_n| {
            let s = match family {
                Family::Weighted => riemann_sum_weighted(n, params.h.unwrap_or(0), params.r, x, ctx, big_n)?,
                _ => riemann_sum_multi(n, params.r, x, ctx, big_n)?,
            };
            Ok((big_n, p_valuation(&(s - &exact), ctx.p)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let monotone = points.windows(2).all(|w| w[0].1 <= w[1].1);
    Ok(ConvergenceReport { family, params, target, p: ctx.p, q0: ctx.q0.clone(), points, monotone })
}
