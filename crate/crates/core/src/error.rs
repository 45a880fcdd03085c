use thiserror::Error;

/// Errors surfaced by constructors, maps, and the CLI surface.
#[derive(Debug, Error)]
pub enum Error {
    /// The operation is not defined on this input (e.g. a reduction map at k = 0).
    #[error("domain error: {0}")]
    Domain(String),

    /// Truncated series with different truncation orders cannot be combined.
    #[error("series order mismatch: ({0},{1}) vs ({2},{3})")]
    OrderMismatch(usize, usize, usize, usize),

    /// A candidate object violates its type invariants.
    #[error("invalid object: {0}")]
    Invalid(String),

    /// Malformed textual or JSON input.
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
