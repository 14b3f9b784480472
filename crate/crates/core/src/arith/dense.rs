//! Dense univariate polynomials over the integers, stored low degree first.
//!
//! This is the workhorse underneath [`LaurentPoly`](super::LaurentPoly) and
//! [`RatFun`](super::RatFun): every multiplication, gcd and exact division
//! ends up here. Slices are assumed trimmed (no trailing zeros) unless a
//! function says otherwise; the empty slice is the zero polynomial.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub(crate) type Dense = Vec<BigInt>;

pub(crate) fn trim(v: &mut Dense) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

pub(crate) fn add(a: &[BigInt], b: &[BigInt]) -> Dense {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out: Dense = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    trim(&mut out);
    out
}

pub(crate) fn neg(a: &[BigInt]) -> Dense {
    a.iter().map(|c| -c).collect()
}

pub(crate) fn sub(a: &[BigInt], b: &[BigInt]) -> Dense {
    let mut out: Dense = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), BigInt::zero());
    }
    for (o, s) in out.iter_mut().zip(b) {
        *o -= s;
    }
    trim(&mut out);
    out
}

pub(crate) fn scale(a: &[BigInt], c: &BigInt) -> Dense {
    if c.is_zero() {
        return Dense::new();
    }
    a.iter().map(|x| x * c).collect()
}

/// Shifts every coefficient up by `k` places (multiplication by x^k).
pub(crate) fn shift_up(a: &[BigInt], k: usize) -> Dense {
    if a.is_empty() {
        return Dense::new();
    }
    let mut out = vec![BigInt::zero(); k];
    out.extend_from_slice(a);
    out
}

fn as_small(a: &[BigInt]) -> Option<(Vec<i64>, u128)> {
    let mut max = 0u128;
    let mut out = Vec::with_capacity(a.len());
    for c in a {
        let v = c.to_i64()?;
        max = max.max(v.unsigned_abs() as u128);
        out.push(v);
    }
    Some((out, max))
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> Dense {
    if a.is_empty() || b.is_empty() {
        return Dense::new();
    }
    // Machine-word fast path: every partial sum is bounded by
    // max|a| * max|b| * min(len) which must fit in i128.
    if let (Some((sa, ma)), Some((sb, mb))) = (as_small(a), as_small(b)) {
        let terms = a.len().min(b.len()) as u128;
        if ma.checked_mul(mb).and_then(|p| p.checked_mul(terms)).is_some_and(|bound| bound < i128::MAX as u128) {
            let mut acc = vec![0i128; a.len() + b.len() - 1];
            for (i, &x) in sa.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in sb.iter().enumerate() {
                    acc[i + j] += x as i128 * y as i128;
                }
            }
            let mut out: Dense = acc.into_iter().map(BigInt::from).collect();
            trim(&mut out);
            return out;
        }
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn pow(a: &[BigInt], mut e: u32) -> Dense {
    let mut base: Dense = a.to_vec();
    let mut acc: Dense = vec![BigInt::one()];
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base);
        }
    }
    acc
}

/// Nonnegative gcd of all coefficients; zero for the zero polynomial.
pub(crate) fn content(a: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        if c.is_zero() {
            continue;
        }
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Divides out the content and makes the leading coefficient positive.
pub(crate) fn primitive_part(a: &[BigInt]) -> Dense {
    if a.is_empty() {
        return Dense::new();
    }
    let mut g = content(a);
    if a.last().is_some_and(|c| c.sign() == Sign::Minus) {
        g = -g;
    }
    if g.is_one() {
        return a.to_vec();
    }
    a.iter().map(|c| c / &g).collect()
}

/// Exact quotient `a / b` over the integers, or `None` when `b` does not
/// divide `a` in Z[x]. When `b` is primitive this coincides with
/// divisibility over Q (Gauss's lemma).
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Dense> {
    assert!(!b.is_empty(), "division by the zero polynomial");
    if a.is_empty() {
        return Some(Dense::new());
    }
    if a.len() < b.len() {
        return None;
    }
    if b.len() == 1 {
        let d = &b[0];
        let mut out = Dense::with_capacity(a.len());
        for c in a {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        return Some(out);
    }
    let lead = b.last().unwrap();
    let unit = lead.abs().is_one();
    let mut rem: Dense = a.to_vec();
    let qlen = a.len() - b.len() + 1;
    let mut quot = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let top = &rem[k + b.len() - 1];
        if top.is_zero() {
            continue;
        }
        let q = if unit {
            top * lead
        } else {
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            q
        };
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                rem[k + j] -= &q * bj;
            }
        }
        quot[k] = q;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut quot);
    Some(quot)
}

/// Pseudo-remainder of `a` by `b`, made primitive.
fn prem_primitive(a: &[BigInt], b: &[BigInt]) -> Dense {
    let lead = b.last().unwrap().clone();
    let mut rem: Dense = a.to_vec();
    let db = b.len() - 1;
    while rem.len() > db {
        let top = rem.last().unwrap().clone();
        let shift = rem.len() - 1 - db;
        // rem <- lead*rem - top*x^shift*b, with the common factor removed
        let g = lead.gcd(&top);
        let lf = &lead / &g;
        let tf = &top / &g;
        if !lf.is_one() {
            for c in rem.iter_mut() {
                *c *= &lf;
            }
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                rem[shift + j] -= &tf * bj;
            }
        }
        debug_assert!(rem.last().unwrap().is_zero());
        rem.pop();
        trim(&mut rem);
        if rem.len() > 8 {
            let c = content(&rem);
            if !c.is_zero() && !c.is_one() {
                for x in rem.iter_mut() {
                    *x /= &c;
                }
            }
        }
    }
    primitive_part(&rem)
}

/// Euclid on primitive parts. The result is primitive with positive leading
/// coefficient; `gcd(0, 0) = 0`.
pub(crate) fn gcd_primitive_euclid(a: &[BigInt], b: &[BigInt]) -> Dense {
    let mut x = primitive_part(a);
    let mut y = primitive_part(b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            return vec![BigInt::one()];
        }
        let r = prem_primitive(&x, &y);
        x = y;
        y = r;
    }
    primitive_part(&x)
}

/// Greatest common divisor in Z[x] of the primitive parts of `a` and `b`.
///
/// Tries the heuristic evaluation gcd first (it is very fast on the
/// cyclotomic-heavy inputs this crate produces) and falls back to Euclid on
/// primitive parts. Every heuristic candidate is confirmed by exact division
/// before it is returned.
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> Dense {
    if a.is_empty() {
        return primitive_part(b);
    }
    if b.is_empty() {
        return primitive_part(a);
    }
    if a.len() == 1 || b.len() == 1 {
        return vec![BigInt::one()];
    }
    let pa = primitive_part(a);
    let pb = primitive_part(b);
    if pa == pb {
        return pa;
    }
    if let Some(g) = heuristic_gcd(&pa, &pb) {
        return g;
    }
    gcd_primitive_euclid(&pa, &pb)
}

fn max_norm(a: &[BigInt]) -> BigInt {
    a.iter().map(|c| c.abs()).max().unwrap_or_default()
}

fn eval_int(a: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in a.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Recovers a polynomial from its value at `xi` using balanced digits.
fn interpolate_balanced(mut v: BigInt, xi: &BigInt) -> Dense {
    let half = xi >> 1u32;
    let mut out = Dense::new();
    while !v.is_zero() {
        let mut d = v.mod_floor(xi);
        if d > half {
            d -= xi;
        }
        v = (v - &d) / xi;
        out.push(d);
    }
    out
}

fn heuristic_gcd(a: &[BigInt], b: &[BigInt]) -> Option<Dense> {
    let bound = max_norm(a).min(max_norm(b));
    let mut xi: BigInt = bound * 2u32 + 29u32;
    for _ in 0..6 {
        let va = eval_int(a, &xi);
        let vb = eval_int(b, &xi);
        if !va.is_zero() && !vb.is_zero() {
            let gamma = va.gcd(&vb);
            let cand = primitive_part(&interpolate_balanced(gamma, &xi));
            if !cand.is_empty() && div_exact(a, &cand).is_some() && div_exact(b, &cand).is_some() {
                return Some(cand);
            }
        }
        xi = (&xi * 73794u32) / 27011u32 + 1u32;
    }
    None
}
