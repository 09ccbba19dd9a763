use thiserror::Error;

/// Errors raised by the spectral-statistics routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument violates the documented precondition of an operation.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A parameter combination cannot be turned into a valid configuration.
    #[error("configuration error: {0}")]
    Config(String),
    /// The requested operation is outside the supported scope.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// An internal invariant was violated.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
