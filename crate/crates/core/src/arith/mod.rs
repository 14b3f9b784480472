//! Exact arithmetic: rationals, Laurent polynomials and rational functions
//! in one indeterminate `q`.

mod dense;
mod laurent;
mod ratfun;
mod rational;

pub use laurent::LaurentPoly;
pub use ratfun::RatFun;
pub use rational::{binomial, format_rational, frac, int, parse_rational, rational_pow, Rational};

/// Default bound on the exponent span a power may produce.
pub const DEFAULT_MAX_SPAN: u64 = 100_000;
