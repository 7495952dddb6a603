use bcsurf::Error;

/// Failures that stop a run before a report exists.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("specialization rejected: {0}")]
    Guard(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Guard(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Guard(m) => CliError::Guard(m),
            other => CliError::Config(other.to_string()),
        }
    }
}

/// Errors caused by the request rather than by a failed check.
pub fn is_config_error(e: &Error) -> bool {
    matches!(e, Error::Guard(_) | Error::BoundExceeded { .. } | Error::DenominatorVanishes | Error::Parse(_))
}
