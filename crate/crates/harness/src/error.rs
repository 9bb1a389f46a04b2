use std::path::PathBuf;

use sps_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("{0}")]
    Usage(String),
    #[error("line {line}, column {column}: {msg}")]
    Syntax { line: usize, column: usize, msg: String },
    #[error("{path}: {msg}")]
    Schema { path: String, msg: String },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("theorem assertion failed: {0}")]
    Theorem(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl HarnessError {
    pub(crate) fn schema(path: &str, msg: impl Into<String>) -> Self {
        HarnessError::Schema { path: path.to_string(), msg: msg.into() }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        HarnessError::Io { path: path.into(), source }
    }

    /// Process exit status for this failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Usage(_) => 1,
            HarnessError::Syntax { .. } | HarnessError::Schema { .. } | HarnessError::Io { .. } | HarnessError::Csv(_) => 2,
            HarnessError::Theorem(_) => 4,
            HarnessError::Core(e) => match e {
                CoreError::CapExceeded { .. } => 3,
                CoreError::HardFault(_) => 4,
                _ => 2,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
