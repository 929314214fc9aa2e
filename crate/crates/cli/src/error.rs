use std::fmt;

/// Failure of a command, classified by exit code.
#[derive(Clone, Debug, thiserror::Error)]
pub enum CliError {
    #[error("validation error: {0}")]
    Validation(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Resource(_) => 2,
            CliError::Invariant(_) => 3,
        }
    }

    pub fn validation(msg: impl fmt::Display) -> Self {
        CliError::Validation(msg.to_string())
    }
}

impl From<eulercalc::Error> for CliError {
    fn from(e: eulercalc::Error) -> Self {
        use eulercalc::Error::*;
        match e {
            DimensionMismatch { .. } | Input(_) => CliError::Validation(e.to_string()),
            Budget { .. } => CliError::Resource(e.to_string()),
            Inconsistent { .. } | Internal(_) => CliError::Invariant(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Validation(format!("malformed document: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
