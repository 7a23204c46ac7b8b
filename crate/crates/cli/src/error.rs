use thiserror::Error;

/// Stable process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    ConfigError = 1,
    IoError = 2,
    TrackingFailure = 3,
    KindMismatch = 4,
}

/// Command-level failures, each mapped to one exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("tracking failure: {0}")]
    Tracking(String),

    #[error("{0}")]
    KindMismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Config(_) => ExitCode::ConfigError,
            CliError::Io(_) => ExitCode::IoError,
            CliError::Tracking(_) => ExitCode::TrackingFailure,
            CliError::KindMismatch(_) => ExitCode::KindMismatch,
        }
    }
}

impl From<dressed_trap_core::Error> for CliError {
    fn from(e: dressed_trap_core::Error) -> Self {
        use dressed_trap_core::Error as E;
        match e {
            E::LostTracking { .. } => CliError::Tracking(e.to_string()),
            E::NotTimeDependent | E::KindMismatch { .. } => CliError::KindMismatch(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
