//! Error types shared across the workspace.

use thiserror::Error;

/// Library-wide error type.
///
/// The three broad classes map to distinct process exit codes in the CLI:
/// validation problems (bad input), theorem violations (an exact identity
/// that must hold failed, e.g. a division left a remainder), and guardrail
/// breaches (a request outside the supported desk-scale bounds).
#[derive(Debug, Error)]
pub enum Error {
    #[error("validation: {0}")]
    Validation(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("guardrail: {0}")]
    Guardrail(String),

    #[error("precision exhausted: {0}")]
    Precision(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn theorem(msg: impl Into<String>) -> Self {
        Error::TheoremViolation(msg.into())
    }

    pub fn guardrail(msg: impl Into<String>) -> Self {
        Error::Guardrail(msg.into())
    }

    /// Process exit code the CLI reports for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_) | Error::Io(_) | Error::Json(_) | Error::Precision(_) => 1,
            Error::TheoremViolation(_) => 2,
            Error::Guardrail(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
