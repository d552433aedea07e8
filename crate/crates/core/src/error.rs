use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("extension degree must be at least 1")]
    BadExtensionDegree,
    #[error("field order {q} exceeds the configured bound {bound}")]
    FieldTooLarge { q: u64, bound: u64 },
    #[error("element index {rep} is outside F_{q}")]
    ElementOutOfRange { rep: u32, q: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("polynomial must be monic of degree at least 1")]
    NotMonic,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("enumeration of {what} exceeds the budget ({size} > {budget})")]
    BudgetExceeded {
        what: String,
        size: String,
        budget: u64,
    },
    #[error("subspace dimension {k} out of range for ambient dimension {n}")]
    DimensionOutOfRange { k: usize, n: usize },
    #[error("truncation orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("exp requires a zero constant term")]
    ExpConstantTerm,
    #[error("log requires constant term 1")]
    LogConstantTerm,
    #[error("operand of E/sym may have structures in dimension 0: {0}")]
    NonEmptyAtZero(String),
    #[error("expression carries weight marks; use the weighted series")]
    WeightedExpression,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("brute-force methods disagree: {0}")]
    OracleMismatch(String),
    #[error("value is not integral: {0}")]
    NotIntegral(String),
}

pub type Result<T> = std::result::Result<T, Error>;
