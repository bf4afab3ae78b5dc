use thiserror::Error;

/// Crate-wide error type. The CLI maps variants onto exit codes:
/// config/contract -> 2, capacity -> 3, numeric -> 4.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition of an operation was violated by the caller.
    #[error("contract violation: {0}")]
    Contract(String),

    /// An enumeration or recursion exceeded its configured cap.
    /// Never silently truncated; the message names the cap.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A floating-point objective produced NaN or an infinity.
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// Malformed configuration document.
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
    pub fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }
    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
