use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} requires a positive argument, got 0")]
    Zero(&'static str),

    #[error("cannot factor {0}: cofactor exceeds the square of the sieve bound")]
    OutOfSieveRange(u64),

    #[error("invalid constraint: {0}")]
    InvalidConstraint(String),

    #[error("exponent tuple has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("weights have gcd {0}, expected 1")]
    NonCoprimeWeights(u64),

    #[error("range too small: {0}")]
    RangeTooSmall(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Two evaluation routes that must agree did not.
    #[error("internal consistency fault: {0}")]
    Consistency(String),

    #[error("work budget exceeded: {needed} units needed, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;
