use thiserror::Error;

/// Errors raised by the algebra layer and the verifier.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument is outside the operation's accepted range.
    #[error("invalid argument: {0}")]
    Argument(String),
    /// The input is well formed but not in the domain of the map (e.g. not nilpotent).
    #[error("domain error: {0}")]
    Domain(String),
    /// Operands live over different fields, dimensions or lengths.
    #[error("mismatch: {0}")]
    Mismatch(String),
    /// A required feature is not supported at this scale.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A coefficient that must be p-integral had a denominator divisible by p.
    #[error("integrality violated: coefficient {index} = {value} has denominator divisible by {p}")]
    Integrality { p: u32, index: usize, value: String },
    /// Malformed external input (files, CLI values).
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    /// Bad verifier configuration or suite selection.
    #[error("usage: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}
