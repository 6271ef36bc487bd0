use thiserror::Error;

/// CLI failure classes, mapped onto process exit codes:
/// 0 success, 1 numerical or I/O failure, 2 usage error.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Numerical(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<hybrid_noma_core::Error> for CliError {
    fn from(err: hybrid_noma_core::Error) -> Self {
        use hybrid_noma_core::Error::*;
        match err {
            InvalidParameter { .. } | InfeasibleSplit { .. } => CliError::Usage(err.to_string()),
            QuadratureNonConvergence { .. } | NonFiniteIntegrand { .. }
            | NotAProbability { .. } => CliError::Numerical(err.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
