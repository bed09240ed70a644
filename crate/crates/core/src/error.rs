use thiserror::Error;

/// Errors raised by the series kernel, the recursions and the chain oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two operands disagree on their truncation, or an argument is outside
    /// the range an operation accepts.
    #[error("contract violation: {0}")]
    Contract(String),

    /// `exp0` was handed a series with a nonzero constant term.
    #[error("exponential requires a zero constant term")]
    NonzeroConstant,

    /// `div_var` found a monomial without the variable being divided out.
    #[error("monomial {monomial} is not divisible by g{index}")]
    NotDivisible { monomial: String, index: u32 },

    /// A fixpoint iteration or a structural identity failed; this always
    /// points at a bug, never at bad input.
    #[error("internal consistency: {0}")]
    Consistency(String),

    /// Rank or size outside the range for which a quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// The brute-force enumeration was asked for an instance above its cap.
    #[error("{kind} with n = {n} exceeds the enumeration cap of {cap}")]
    ResourceGuard { kind: char, n: usize, cap: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
