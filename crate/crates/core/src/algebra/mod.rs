//! Exact arithmetic kernel: rationals, packed monomials and sparse truncated
//! power series in the variables `g0, g1, g2, ...`.

mod monomial;
pub mod rational;
mod series;

pub use monomial::{Monomial, MAX_INDEX};
pub use rational::Rational;
pub use series::{Series, Truncation};

#[cfg(test)]
mod tests;
