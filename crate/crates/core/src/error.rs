use thiserror::Error;

/// Errors raised by the pentafold operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A required input (e.g. an earlier table entry) is missing.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The difference table never reached an all-zero row.
    #[error("sequence is not polynomial within {depth} difference rows")]
    NonPolynomial { depth: usize },

    /// The tail bound requires more terms than the configured cap allows.
    #[error("truncation infeasible: exponent cap {needed} needed, hard cap is {cap}")]
    TruncationInfeasible { needed: u64, cap: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
