//! Exact computation of Poincaré polynomials of maximal wonderful models for
//! the root arrangements of types A, B (= C) and D, and of their
//! `C^h`-induced arrangements.
//!
//! Two independent routes are provided:
//!
//! * [`forest_series`] solves the recursive equations for the weighted
//!   levelled-forest generating series and [`poincare`] turns them into
//!   Poincaré series by removing bad monomials and substituting
//!   `g0 -> t`, `g_i^r -> (q^{rh} - q)/(q - 1) t^r`;
//! * [`oracle`] builds the posets of the maximal building sets explicitly and
//!   sums the admissible-monomial basis over every strict chain.
//!
//! The crate is pure and deterministic. Hot loops run on rayon when the
//! `parallel` feature is enabled (the default); see [`Execution`].

pub mod algebra;
pub mod error;
mod exec;
pub mod forest_series;
pub mod oracle;
pub mod poincare;

pub use error::{Error, Result};
pub use exec::Execution;
