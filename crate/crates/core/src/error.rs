use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside the range an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// The input is valid but the requested case is not covered
    /// (integral r, odd index, n < 2).
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// An algorithm broke one of its own invariants. Never expected on valid input.
    #[error("internal error: {message}; trace: {trace}")]
    Internal { message: String, trace: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
