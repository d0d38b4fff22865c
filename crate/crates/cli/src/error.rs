use std::path::PathBuf;

use thiserror::Error;
use vdistill::VdError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("fixture {}: {source}", path.display())]
    Fixture { path: PathBuf, source: VdError },
    #[error("estimation: {0}")]
    Estimation(VdError),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        Self::Config(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Fixture { .. } => 2,
            CliError::Estimation(_) => 3,
            CliError::Io { .. } | CliError::Csv(_) => 1,
        }
    }
}

impl From<VdError> for CliError {
    fn from(e: VdError) -> Self {
        Self::Estimation(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
