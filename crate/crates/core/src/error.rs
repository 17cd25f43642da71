//! Error type shared by every module.

use thiserror::Error;

/// Failures reported by library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input outside the mathematical domain of the operation.
    #[error("{0}")]
    Domain(String),
    /// A Weierstrass model with vanishing discriminant.
    #[error("singular curve: {0}")]
    Singular(String),
    /// Inversion of zero.
    #[error("division by zero")]
    DivisionByZero,
    /// A computation exceeded a configured budget.
    #[error("resource limit: {0}")]
    Resource(String),
    /// A valid input for which the operation has no support.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A failed internal consistency check.
    #[error("internal error: {0}")]
    Internal(String),
}

/// Convenience alias.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
