use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An operation was called outside its domain (bad degree, repeated roots, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// The numeric layer could not certify a result at the requested precision.
    #[error("precision error: {0}")]
    Precision(String),
    /// Polynomial expression failed to parse; `column` is 1-based.
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    /// An invariant that must hold by construction was violated.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
