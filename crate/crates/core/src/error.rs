use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument is outside the operation's domain (alphabet mismatch,
    /// n = 0, bad letter, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A length or window cap was hit before the computation could finish.
    #[error("resource limit: {0}")]
    Resource(String),

    /// Malformed morphism / coding text.
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    /// An internal construction broke one of its own invariants.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
