use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The numeric configuration cannot support the requested computation.
    #[error("configuration error: {0}")]
    Config(String),

    /// An iterative routine failed to bracket or converge.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// A construction produced a state that should be impossible.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
