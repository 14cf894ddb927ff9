use std::path::Path;

use thiserror::Error;

/// Exit status for configuration, parse and I/O problems.
pub const EXIT_CONFIG: u8 = 2;
/// Exit status for numerical failures (non-convergence, resource budgets).
pub const EXIT_NUMERIC: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("{path}: {detail}")]
    Io { path: String, detail: String },
    #[error("refusing to fit: {0}")]
    Refused(String),
    #[error(transparent)]
    Core(#[from] pauli_core::Error),
}

impl CliError {
    pub fn config(detail: impl Into<String>) -> Self {
        CliError::Config(detail.into())
    }

    pub fn io(path: &Path, err: impl std::fmt::Display) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            detail: err.to_string(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_numeric() => EXIT_NUMERIC,
            _ => EXIT_CONFIG,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
