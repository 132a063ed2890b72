use thiserror::Error;

/// Errors raised by the algebra engine.
///
/// Mathematical verdicts (an ideal that is not idempotent, a failed axiom)
/// are reported as data, not as errors. Errors are reserved for invalid
/// input and for internal consistency failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields: {0} vs {1}")]
    MixedFields(String, String),
    #[error("invalid field description: {0}")]
    InvalidField(String),
    #[error("not a field extension: {0}")]
    NotAFieldExtension(String),
    #[error("not C_{n}-Galois: {reason}")]
    NotGalois { n: usize, reason: String },
    #[error("usage error: {0}")]
    Usage(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("structure map does not descend to the quotient: {0}")]
    Descent(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}
