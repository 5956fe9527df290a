use thiserror::Error;

/// Errors raised by the exact classes and the numeric oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The input lies outside the operation's domain (zero divisor, improper
    /// element, negative delay, mismatched grids, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// An iterative method failed to converge.
    #[error("numerical error: {message} (best residual {residual:e})")]
    Numerical { message: String, residual: f64 },
    /// The argument is outside the validated range of an approximation.
    #[error("range error: {0}")]
    Range(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
