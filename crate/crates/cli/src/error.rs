use std::io;
use std::path::Path;

/// Failure classes, mapped onto the process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad arguments, config or input data (exit 1).
    #[error("{0}")]
    Validation(String),
    /// I/O or numerical failure while running (exit 2).
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Validation(_) => 1,
            Self::Runtime(_) => 2,
        }
    }

    pub(crate) fn io(path: &Path, err: io::Error) -> Self {
        Self::Runtime(format!("{}: {err}", path.display()))
    }
}

impl From<fbmc_golay::Error> for CliError {
    fn from(err: fbmc_golay::Error) -> Self {
        Self::Validation(err.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
