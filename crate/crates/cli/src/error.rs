//! Command errors and their exit codes.

use crate::parse::ParseError;

/// Exit status of a successful command.
pub const EXIT_OK: i32 = 0;
/// Malformed arguments or expression syntax.
pub const EXIT_USAGE: i32 = 1;
/// Semantic or domain failure, including class overflow and unrealizable elements.
pub const EXIT_DOMAIN: i32 = 2;
/// Numerical failure of an iterative method or approximation.
pub const EXIT_NUMERICAL: i32 = 3;
/// `verify` ran but the deviation exceeded the tolerance.
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error("class overflow: {0}")]
    ClassOverflow(String),
    #[error(transparent)]
    Core(#[from] opcalc::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("verification failed: deviation {deviation:e} exceeds tolerance {tol:e}")]
    Mismatch { deviation: f64, tol: f64 },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Syntax(_) => EXIT_USAGE,
            CliError::ClassOverflow(_) | CliError::Io(_) => EXIT_DOMAIN,
            CliError::Core(opcalc::Error::Domain(_)) => EXIT_DOMAIN,
            CliError::Core(opcalc::Error::Numerical { .. } | opcalc::Error::Range(_)) => {
                EXIT_NUMERICAL
            }
            CliError::Mismatch { .. } => EXIT_MISMATCH,
        }
    }
}
