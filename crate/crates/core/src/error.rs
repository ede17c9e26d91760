use thiserror::Error;

/// Errors reported by the construction and verification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// The input violates a structural precondition; `witness` names the offending set.
    #[error("invalid input: {reason} (witness {witness})")]
    InvalidInput { reason: String, witness: String },
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("budget exceeded after {nodes} search nodes")]
    BudgetExceeded { nodes: u64 },
    #[error("construction failed: {0}")]
    Failure(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
