use thiserror::Error;

/// Errors raised by the arithmetic layers and the relation solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NonPrimeP(u64),

    #[error("field of order {p}^{s} exceeds the configured limits")]
    UnsupportedSize { p: u64, s: u32 },

    #[error("{0} is not a prime power")]
    NotAPrimePower(u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("multinomial parts sum to {got}, expected {expected}")]
    PartsSumMismatch { expected: u64, got: u64 },

    #[error("index j = {j} outside the admissible range [0, {max}]")]
    JOutOfRange { j: u64, max: u64 },

    #[error("c_(a,j) is only defined for prime q, got q = {0}")]
    NonPrimeQ(u64),

    #[error("enumeration of {requested} elements exceeds the budget of {budget}")]
    BudgetExceeded { requested: u64, budget: u64 },

    #[error("rational function has a pole at t = 0")]
    PoleAtZero,

    #[error("coefficient of t^{exponent} does not lie in the prime field")]
    CoefficientNotInPrimeField { exponent: usize },

    #[error("index {0} produced twice while merging recursion steps")]
    IndexCollision(u64),

    #[error("this formula requires q = 2, got q = {0}")]
    QNotTwo(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
