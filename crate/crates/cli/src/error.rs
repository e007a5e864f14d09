use stieltjes_core::Error as CoreError;

/// Process exit codes shared by every subcommand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Pass = 0,
    VerificationFailure = 1,
    Usage = 2,
}

impl ExitStatus {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Core(#[from] CoreError),
    #[error("cannot read config {path}: {source}")]
    Config { path: String, source: std::io::Error },
    #[error("bad config: {0}")]
    ConfigFormat(#[from] serde_json::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    /// Bad input maps to 2; a computation that ran and failed maps to 1.
    pub fn status(&self) -> ExitStatus {
        match self {
            CliError::Core(CoreError::Domain { .. } | CoreError::InvalidParameter(_)) => ExitStatus::Usage,
            CliError::Core(_) => ExitStatus::VerificationFailure,
            CliError::Io(_) | CliError::Csv(_) => ExitStatus::VerificationFailure,
            _ => ExitStatus::Usage,
        }
    }
}
