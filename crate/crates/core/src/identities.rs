//! Exact verification of the Carlitz recurrence, the shift identity, the
//! binomial expansion, the symmetry theorems and the multiplication formula.
//!
//! Both sides of every symmetry identity are assembled from the closed forms
//! in [`crate::qbernoulli`], never from each other, and compared with
//! [`RatFun::equiv`]. The generating-function form of the first symmetry
//! theorem is covered coefficientwise: its `t^n/n!` coefficient is exactly
//! the statement checked by [`check_thm3`] at degree `n`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, RatFun, Rational};
use crate::error::{Error, Result};
use crate::qbernoulli::{
    beta_higher, beta_number, beta_weighted, classical_bernoulli_higher, t_sum_h, t_sum_with_step_offset, BetaQuery,
    WeightedBetaQuery,
};
use crate::qcore::{q_bracket, BaseExp};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    Recurrence,
    Shift,
    Expansion,
    Thm3,
    Thm4,
    Thm5,
    Thm6,
    Multiplication,
    #[serde(rename = "limit-q1")]
    LimitQ1,
}

impl Identity {
    pub const ALL: [Identity; 9] = [
        Identity::Recurrence,
        Identity::Shift,
        Identity::Expansion,
        Identity::Thm3,
        Identity::Thm4,
        Identity::Thm5,
        Identity::Thm6,
        Identity::Multiplication,
        Identity::LimitQ1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Recurrence => "recurrence",
            Identity::Shift => "shift",
            Identity::Expansion => "expansion",
            Identity::Thm3 => "thm3",
            Identity::Thm4 => "thm4",
            Identity::Thm5 => "thm5",
            Identity::Thm6 => "thm6",
            Identity::Multiplication => "multiplication",
            Identity::LimitQ1 => "limit-q1",
        }
    }

    fn uses(self) -> Uses {
        use Identity::*;
        match self {
            Recurrence | Shift => Uses { x: false, r: false, h: false, w1: false, w2: false },
            Expansion => Uses { x: true, r: false, h: false, w1: false, w2: false },
            LimitQ1 => Uses { x: true, r: true, h: false, w1: false, w2: false },
            Multiplication => Uses { x: true, r: true, h: false, w1: true, w2: false },
            Thm3 | Thm4 => Uses { x: true, r: true, h: false, w1: true, w2: true },
            Thm5 | Thm6 => Uses { x: true, r: true, h: true, w1: true, w2: true },
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Uses {
    x: bool,
    r: bool,
    h: bool,
    w1: bool,
    w2: bool,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown identity {s:?}")))
    }
}

/// Parameter record of one check; fields an identity does not use are `None`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Params {
    pub n: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub h: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub w1: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub w2: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub x: Option<i64>,
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub identity: Identity,
    pub params: Params,
    pub lhs: RatFun,
    pub rhs: RatFun,
    pub holds: bool,
}

impl CheckReport {
    fn new(identity: Identity, params: Params, lhs: RatFun, rhs: RatFun) -> Self {
        let holds = lhs.equiv(&rhs);
        CheckReport { identity, params, lhs, rhs, holds }
    }

    /// One JSON line; both sides are included on failure or when `verbose`.
    pub fn to_json_line(&self, verbose: bool) -> String {
        #[derive(Serialize)]
        struct Line<'a> {
            identity: Identity,
            params: &'a Params,
            holds: bool,
            #[serde(skip_serializing_if = "Option::is_none")]
            lhs: Option<&'a RatFun>,
            #[serde(skip_serializing_if = "Option::is_none")]
            rhs: Option<&'a RatFun>,
        }
        let full = verbose || !self.holds;
        let line = Line {
            identity: self.identity,
            params: &self.params,
            holds: self.holds,
            lhs: full.then_some(&self.lhs),
            rhs: full.then_some(&self.rhs),
        };
        serde_json::to_string(&line).expect("report serializes")
    }
}

/// Deliberate corruption of a checker, used to show the verifier can fail.
#[doc(hidden)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// Adds one to the weight exponent `i + 1` of the T-sums on the left side
    /// of the convolution-form symmetry identity.
    Thm4LhsExponent,
}

fn base(w: u32) -> Result<BaseExp> {
    BaseExp::new(w)
}

fn recurrence_rhs(n: u32) -> RatFun {
    match n {
        0 => &RatFun::q_pow(1) - &RatFun::one(),
        1 => RatFun::one(),
        _ => RatFun::zero(),
    }
}

/// `q (q beta + 1)^n - beta_n` with `beta^l -> beta_{l,q}`, against
/// `q - 1`, `1`, `0` for `n = 0`, `n = 1`, `n > 1`.
pub fn check_recurrence(n: u32) -> Result<CheckReport> {
    let mut sum = RatFun::zero();
    for l in 0..=n {
        let c = Rational::from_integer(binomial(n, l));
        sum = &sum + &beta_number(l).shift(l as i64).scale(&c);
    }
    let lhs = &sum.shift(1) - &beta_number(n);
    Ok(CheckReport::new(Identity::Recurrence, Params { n, ..Default::default() }, lhs, recurrence_rhs(n)))
}

/// `q beta_{n,q}(1) - beta_{n,q}` against the same three cases.
pub fn check_shift(n: u32) -> Result<CheckReport> {
    let at_one = beta_higher(&BetaQuery::new(n, 1, 1, 1)?)?;
    let lhs = &at_one.shift(1) - &beta_number(n);
    Ok(CheckReport::new(Identity::Shift, Params { n, ..Default::default() }, lhs, recurrence_rhs(n)))
}

/// `beta_{n,q}(x)` against `sum_l C(n,l) q^{lx} beta_{l,q} [x]_q^{n-l}`.
pub fn check_expansion(n: u32, x: i64) -> Result<CheckReport> {
    let lhs = beta_higher(&BetaQuery::new(n, 1, 1, x)?)?;
    let bx = q_bracket(x, BaseExp::ONE);
    let mut rhs = RatFun::zero();
    for l in 0..=n {
        let c = Rational::from_integer(binomial(n, l));
        let term = &beta_number(l).shift(l as i64 * x) * &bx.pow((n - l) as i64)?;
        rhs = &rhs + &term.scale(&c);
    }
    Ok(CheckReport::new(Identity::Expansion, Params { n, x: Some(x), ..Default::default() }, lhs, rhs))
}

/// Classical limit: `beta^{(r)}_{n,q}(x)` at `q = 1` against `B^{(r)}_n(x)`.
pub fn check_limit_q1(n: u32, r: u32, x: i64) -> Result<CheckReport> {
    let lim = beta_higher(&BetaQuery::new(n, r, 1, x)?)?.limit_at_one()?;
    let classical = classical_bernoulli_higher(n, r, &Rational::from_integer(x.into()))?;
    Ok(CheckReport::new(
        Identity::LimitQ1,
        Params { n, r: Some(r), x: Some(x), ..Default::default() },
        RatFun::from_rational(lim),
        RatFun::from_rational(classical),
    ))
}

/// Number of tuples in `[0, w)^r` with each coordinate sum, as a map
/// `sum -> count`.
fn sum_multiplicities(w: u32, r: u32) -> BTreeMap<u32, u64> {
    let mut counts: BTreeMap<u32, u64> = BTreeMap::from([(0, 1)]);
    for _ in 0..r {
        let mut next = BTreeMap::new();
        for (&s, &c) in &counts {
            for j in 0..w {
                *next.entry(s + j).or_insert(0) += c;
            }
        }
        counts = next;
    }
    counts
}

/// `[a]_q^{n-r} sum_{j in [0,a)^r} q^{b J} beta^{(r)}_{n,q^a}(b x + (b/a) J)`.
fn thm3_side(n: u32, r: u32, a: u32, b: u32, x: i64) -> Result<RatFun> {
    let mut sum = RatFun::zero();
    for (j, count) in sum_multiplicities(a, r) {
        let arg = (a as i64) * (b as i64) * x + b as i64 * j as i64;
        let beta = beta_higher(&BetaQuery::new(n, r, a, arg)?)?;
        let term = beta.shift(b as i64 * j as i64).scale(&Rational::from_integer(count.into()));
        sum = &sum + &term;
    }
    Ok(&q_bracket(a as i64, BaseExp::ONE).pow(n as i64 - r as i64)? * &sum)
}

fn check_grid_args(r: u32, w1: u32, w2: u32) -> Result<()> {
    if r == 0 {
        return Err(Error::Domain("order r must be at least 1".into()));
    }
    base(w1)?;
    base(w2)?;
    Ok(())
}

pub fn check_thm3(n: u32, r: u32, w1: u32, w2: u32, x: i64) -> Result<CheckReport> {
    check_grid_args(r, w1, w2)?;
    let lhs = thm3_side(n, r, w1, w2, x)?;
    let rhs = thm3_side(n, r, w2, w1, x)?;
    Ok(CheckReport::new(Identity::Thm3, sym_params(n, r, None, w1, w2, x), lhs, rhs))
}

/// `sum_i C(n,i) [a]^{n-i} [b]^{i-r} beta^{(r)}_{i,q^b}(a x) T^{(r)}_{n,i}(b | q^a)`.
fn thm4_side(n: u32, r: u32, a: u32, b: u32, x: i64, t_offset: i64) -> Result<RatFun> {
    let ba = q_bracket(a as i64, BaseExp::ONE);
    let bb = q_bracket(b as i64, BaseExp::ONE);
    let mut sum = RatFun::zero();
    for i in 0..=n {
        let beta = beta_higher(&BetaQuery::new(i, r, b, a as i64 * b as i64 * x)?)?;
        let t = t_sum_with_step_offset(n, i, r, b, base(a)?, t_offset)?;
        let brackets = &ba.pow((n - i) as i64)? * &bb.pow(i as i64 - r as i64)?;
        let term = &(&brackets * &beta) * &t;
        sum = &sum + &term.scale(&Rational::from_integer(binomial(n, i)));
    }
    Ok(sum)
}

pub fn check_thm4(n: u32, r: u32, w1: u32, w2: u32, x: i64) -> Result<CheckReport> {
    check_thm4_with(n, r, w1, w2, x, None)
}

fn check_thm4_with(n: u32, r: u32, w1: u32, w2: u32, x: i64, mutation: Option<Mutation>) -> Result<CheckReport> {
    check_grid_args(r, w1, w2)?;
    let offset = match mutation {
        Some(Mutation::Thm4LhsExponent) => 1,
        None => 0,
    };
    let lhs = thm4_side(n, r, w1, w2, x, offset)?;
    let rhs = thm4_side(n, r, w2, w1, x, 0)?;
    Ok(CheckReport::new(Identity::Thm4, sym_params(n, r, None, w1, w2, x), lhs, rhs))
}

/// `[a]^{n-r} sum_{j in [0,a)^r} q^{b sum_l (h-l+1) j_l} beta^{(h,r)}_{n,q^a}(b x + (b/a) J)`.
fn thm5_side(n: u32, h: i64, r: u32, a: u32, b: u32, x: i64) -> Result<RatFun> {
    // group index tuples by (J, weight exponent)
    let mut groups: BTreeMap<(i64, i64), u64> = BTreeMap::new();
    let mut idx = vec![0u32; r as usize];
    'outer: loop {
        let j: i64 = idx.iter().map(|&v| v as i64).sum();
        let e: i64 = idx.iter().enumerate().map(|(l, &v)| (h - (l as i64 + 1) + 1) * v as i64).sum();
        *groups.entry((j, e)).or_insert(0) += 1;
        for v in idx.iter_mut() {
            *v += 1;
            if *v < a {
                continue 'outer;
            }
            *v = 0;
        }
        break;
    }
    let mut betas: BTreeMap<i64, RatFun> = BTreeMap::new();
    let mut sum = RatFun::zero();
    for ((j, e), count) in groups {
        let beta = match betas.get(&j) {
            Some(v) => v.clone(),
            None => {
                let arg = a as i64 * b as i64 * x + b as i64 * j;
                let v = beta_weighted(&WeightedBetaQuery::new(n, h, r, a, arg)?)?;
                betas.insert(j, v.clone());
                v
            }
        };
        let term = beta.shift(b as i64 * e).scale(&Rational::from_integer(count.into()));
        sum = &sum + &term;
    }
    Ok(&q_bracket(a as i64, BaseExp::ONE).pow(n as i64 - r as i64)? * &sum)
}

pub fn check_thm5(n: u32, h: i64, r: u32, w1: u32, w2: u32, x: i64) -> Result<CheckReport> {
    check_grid_args(r, w1, w2)?;
    WeightedBetaQuery::new(n, h, r, 1, 0)?;
    let lhs = thm5_side(n, h, r, w1, w2, x)?;
    let rhs = thm5_side(n, h, r, w2, w1, x)?;
    Ok(CheckReport::new(Identity::Thm5, sym_params(n, r, Some(h), w1, w2, x), lhs, rhs))
}

/// `sum_i C(n,i) [b]^{n-i} [a]^{i-r} beta^{(h,r)}_{i,q^a}(b x) T^{(h,r)}_{n,i}(a | q^b)`.
fn thm6_side(n: u32, h: i64, r: u32, a: u32, b: u32, x: i64) -> Result<RatFun> {
    let ba = q_bracket(a as i64, BaseExp::ONE);
    let bb = q_bracket(b as i64, BaseExp::ONE);
    let mut sum = RatFun::zero();
    for i in 0..=n {
        let beta = beta_weighted(&WeightedBetaQuery::new(i, h, r, a, a as i64 * b as i64 * x)?)?;
        let t = t_sum_h(n, i, h, r, a, base(b)?)?;
        let brackets = &bb.pow((n - i) as i64)? * &ba.pow(i as i64 - r as i64)?;
        let term = &(&brackets * &beta) * &t;
        sum = &sum + &term.scale(&Rational::from_integer(binomial(n, i)));
    }
    Ok(sum)
}

pub fn check_thm6(n: u32, h: i64, r: u32, w1: u32, w2: u32, x: i64) -> Result<CheckReport> {
    check_grid_args(r, w1, w2)?;
    WeightedBetaQuery::new(n, h, r, 1, 0)?;
    let lhs = thm6_side(n, h, r, w1, w2, x)?;
    let rhs = thm6_side(n, h, r, w2, w1, x)?;
    Ok(CheckReport::new(Identity::Thm6, sym_params(n, r, Some(h), w1, w2, x), lhs, rhs))
}

/// `beta^{(r)}_{n,q}(w1 x) = [w1]^{n-r} sum_j q^{J} beta^{(r)}_{n,q^{w1}}(x + J/w1)`.
pub fn check_multiplication(n: u32, r: u32, w1: u32, x: i64) -> Result<CheckReport> {
    check_grid_args(r, w1, 1)?;
    let lhs = beta_higher(&BetaQuery::new(n, r, 1, w1 as i64 * x)?)?;
    let mut sum = RatFun::zero();
    for (j, count) in sum_multiplicities(w1, r) {
        let beta = beta_higher(&BetaQuery::new(n, r, w1, w1 as i64 * x + j as i64)?)?;
        sum = &sum + &beta.shift(j as i64).scale(&Rational::from_integer(count.into()));
    }
    let rhs = &q_bracket(w1 as i64, BaseExp::ONE).pow(n as i64 - r as i64)? * &sum;
    Ok(CheckReport::new(
        Identity::Multiplication,
        Params { n, r: Some(r), w1: Some(w1), x: Some(x), ..Default::default() },
        lhs,
        rhs,
    ))
}

fn sym_params(n: u32, r: u32, h: Option<i64>, w1: u32, w2: u32, x: i64) -> Params {
    Params { n, r: Some(r), h, w1: Some(w1), w2: Some(w2), x: Some(x) }
}

/// Upper bounds a sweep must respect before anything is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Guards {
    pub max_n: u32,
    pub max_r: u32,
    pub max_w: u32,
    pub max_abs_x: i64,
    pub max_abs_h: i64,
}

impl Default for Guards {
    fn default() -> Self {
        Guards { max_n: 12, max_r: 4, max_w: 6, max_abs_x: 4, max_abs_h: 8 }
    }
}

/// How the `h` values of a sweep are interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HMode {
    /// `h` takes the listed values.
    #[default]
    Absolute,
    /// `h = r + offset` for each listed offset.
    OffsetFromR,
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub identities: Vec<Identity>,
    pub n: Vec<u32>,
    pub r: Vec<u32>,
    pub h: Vec<i64>,
    pub h_mode: HMode,
    pub w1: Vec<u32>,
    pub w2: Vec<u32>,
    pub x: Vec<i64>,
    pub guards: Guards,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    #[doc(hidden)]
    pub mutation: Option<Mutation>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            identities: vec![Identity::Thm3],
            n: (0..=2).collect(),
            r: vec![1],
            h: vec![0, 1],
            h_mode: HMode::OffsetFromR,
            w1: (1..=2).collect(),
            w2: (1..=2).collect(),
            x: (0..=1).collect(),
            guards: Guards::default(),
            threads: None,
            mutation: None,
        }
    }
}

/// One point of the sweep grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct GridPoint {
    pub identity: Identity,
    pub params: Params,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.identities.is_empty() {
            return Err(Error::Domain("no identity selected".into()));
        }
        let g = &self.guards;
        let mut uses = Uses { x: false, r: false, h: false, w1: false, w2: false };
        for id in &self.identities {
            let u = id.uses();
            uses.x |= u.x;
            uses.r |= u.r;
            uses.h |= u.h;
            uses.w1 |= u.w1;
            uses.w2 |= u.w2;
        }
        let empty = |name: &str| Error::Domain(format!("parameter range {name} is empty"));
        if self.n.is_empty() {
            return Err(empty("n"));
        }
        if uses.r && self.r.is_empty() {
            return Err(empty("r"));
        }
        if uses.h && self.h.is_empty() {
            return Err(empty("h"));
        }
        if uses.w1 && self.w1.is_empty() {
            return Err(empty("w1"));
        }
        if uses.w2 && self.w2.is_empty() {
            return Err(empty("w2"));
        }
        if uses.x && self.x.is_empty() {
            return Err(empty("x"));
        }
        let over =
            |what: &str, v: String, lim: String| Error::Resource(format!("{what} = {v} exceeds the sweep guard {lim}"));
        if let Some(&n) = self.n.iter().find(|&&n| n > g.max_n) {
            return Err(over("n", n.to_string(), g.max_n.to_string()));
        }
        if uses.r {
            if self.r.contains(&0) {
                return Err(Error::Domain("order r must be at least 1".into()));
            }
            if let Some(&r) = self.r.iter().find(|&&r| r > g.max_r) {
                return Err(over("r", r.to_string(), g.max_r.to_string()));
            }
        }
        for (name, list, used) in [("w1", &self.w1, uses.w1), ("w2", &self.w2, uses.w2)] {
            if !used {
                continue;
            }
            if list.contains(&0) {
                return Err(Error::Domain(format!("{name} must be at least 1")));
            }
            if let Some(&w) = list.iter().find(|&&w| w > g.max_w) {
                return Err(over(name, w.to_string(), g.max_w.to_string()));
            }
        }
        if uses.x {
            if let Some(&x) = self.x.iter().find(|&&x| x.abs() > g.max_abs_x) {
                return Err(over("|x|", x.to_string(), g.max_abs_x.to_string()));
            }
        }
        if uses.h {
            for h in self.h_values() {
                if h.abs() > g.max_abs_h {
                    return Err(over("|h|", h.to_string(), g.max_abs_h.to_string()));
                }
            }
        }
        Ok(())
    }

    fn h_values(&self) -> Vec<i64> {
        match self.h_mode {
            HMode::Absolute => self.h.clone(),
            HMode::OffsetFromR => self.r.iter().flat_map(|&r| self.h.iter().map(move |&o| r as i64 + o)).collect(),
        }
    }

    /// Every grid point in deterministic lexicographic order. Weighted
    /// points with a degenerate `(n, h, r)` are outside the domain and are
    /// left out.
    pub fn grid(&self) -> Vec<GridPoint> {
        let mut ids = self.identities.clone();
        ids.sort();
        ids.dedup();
        let sorted_u = |v: &[u32]| {
            let mut v = v.to_vec();
            v.sort();
            v.dedup();
            v
        };
        let sorted_i = |v: &[i64]| {
            let mut v = v.to_vec();
            v.sort();
            v.dedup();
            v
        };
        let (ns, rs, w1s, w2s, xs) =
            (sorted_u(&self.n), sorted_u(&self.r), sorted_u(&self.w1), sorted_u(&self.w2), sorted_i(&self.x));
        let mut out = Vec::new();
        for id in ids {
            let u = id.uses();
            let one_u = |used: bool, v: &Vec<u32>| if used { v.iter().map(|&x| Some(x)).collect() } else { vec![None] };
            let one_i = |used: bool, v: &Vec<i64>| if used { v.iter().map(|&x| Some(x)).collect() } else { vec![None] };
            for &n in &ns {
                for r in one_u(u.r, &rs) {
                    let hs: Vec<Option<i64>> = if u.h {
                        let base = match self.h_mode {
                            HMode::Absolute => 0,
                            HMode::OffsetFromR => r.unwrap_or(0) as i64,
                        };
                        sorted_i(&self.h.iter().map(|&h| base + h).collect::<Vec<_>>())
                            .into_iter()
                            .filter(|&h| !WeightedBetaQuery::is_degenerate(n, h, r.unwrap_or(1)))
                            .map(Some)
                            .collect()
                    } else {
                        vec![None]
                    };
                    for &h in &hs {
                        for w1 in one_u(u.w1, &w1s) {
                            for w2 in one_u(u.w2, &w2s) {
                                for x in one_i(u.x, &xs) {
                                    out.push(GridPoint { identity: id, params: Params { n, r, h, w1, w2, x } });
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// Runs one grid point.
pub fn run_point(p: &GridPoint, mutation: Option<Mutation>) -> Result<CheckReport> {
    let Params { n, r, h, w1, w2, x } = p.params;
    let need = |v: Option<u32>, name: &str| v.ok_or_else(|| Error::Domain(format!("missing parameter {name}")));
    let need_i = |v: Option<i64>, name: &str| v.ok_or_else(|| Error::Domain(format!("missing parameter {name}")));
    match p.identity {
        Identity::Recurrence => check_recurrence(n),
        Identity::Shift => check_shift(n),
        Identity::Expansion => check_expansion(n, need_i(x, "x")?),
        Identity::LimitQ1 => check_limit_q1(n, need(r, "r")?, need_i(x, "x")?),
        Identity::Multiplication => check_multiplication(n, need(r, "r")?, need(w1, "w1")?, need_i(x, "x")?),
        Identity::Thm3 => check_thm3(n, need(r, "r")?, need(w1, "w1")?, need(w2, "w2")?, need_i(x, "x")?),
        Identity::Thm4 => {
            check_thm4_with(n, need(r, "r")?, need(w1, "w1")?, need(w2, "w2")?, need_i(x, "x")?, mutation)
        }
        Identity::Thm5 => {
            check_thm5(n, need_i(h, "h")?, need(r, "r")?, need(w1, "w1")?, need(w2, "w2")?, need_i(x, "x")?)
        }
        Identity::Thm6 => {
            check_thm6(n, need_i(h, "h")?, need(r, "r")?, need(w1, "w1")?, need(w2, "w2")?, need_i(x, "x")?)
        }
    }
}

/// Runs every selected checker over the grid. Reports come back in grid
/// order regardless of how the work was scheduled.
pub fn sweep(cfg: &SweepConfig) -> Result<Vec<CheckReport>> {
    cfg.validate()?;
    run_points(&cfg.grid(), cfg.threads, cfg.mutation)
}

/// Checks the given points in parallel, preserving their order.
pub fn run_points(
    points: &[GridPoint],
    threads: Option<usize>,
    mutation: Option<Mutation>,
) -> Result<Vec<CheckReport>> {
    let work = || -> Result<Vec<CheckReport>> { points.par_iter().map(|p| run_point(p, mutation)).collect() };
    match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| Error::Resource(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    }
}
