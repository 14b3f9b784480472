//! Exact computation of Carlitz q-Bernoulli polynomials of higher order and
//! their weighted variants as rational functions in `q`, verification of
//! their symmetry identities, and p-adic convergence checks for the
//! q-Volkenborn integral representations.
//!
//! ```
//! use qsym::identities::check_thm3;
//! use qsym::qbernoulli::{beta_higher, BetaQuery};
//!
//! let b = beta_higher(&BetaQuery::new(2, 1, 1, 0)?)?;
//! assert_eq!(b.to_pretty(), "q/(1+2*q+2*q^2+q^3)");
//! assert!(check_thm3(3, 2, 2, 3, 1)?.holds);
//! # Ok::<(), qsym::Error>(())
//! ```

pub mod arith;
pub mod cli;
pub mod error;
pub mod identities;
pub mod qbernoulli;
pub mod qcore;
pub mod volkenborn;

pub use arith::{LaurentPoly, RatFun, Rational};
pub use error::{Error, Result};
