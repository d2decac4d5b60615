use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input: type strings, parabolic lists, degree vectors.
    #[error("usage error: {0}")]
    Usage(String),
    /// An operation was called outside its precondition.
    #[error("contract violation: {0}")]
    Contract(String),
    /// A configured search or enumeration cap was exceeded.
    #[error("resource limit: {0}")]
    Resource(String),
    /// An internal consistency assertion failed.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
