use std::path::PathBuf;

use thiserror::Error;

use crate::pauli_text::ParseError;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const NOT_CONVERGED: i32 = 3;
    pub const CAPACITY: i32 = 4;
    pub const PARSE: i32 = 5;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Capacity(String),

    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: ParseError },

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Core(ringcasimir_core::Error),

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Capacity(_) => exit::CAPACITY,
            CliError::Parse { .. } | CliError::Format(_) | CliError::Csv(_) | CliError::Json(_) => exit::PARSE,
            CliError::Core(_) | CliError::Io { .. } => exit::FAILURE,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

impl From<ringcasimir_core::Error> for CliError {
    fn from(e: ringcasimir_core::Error) -> Self {
        use ringcasimir_core::Error as E;
        match e {
            E::Argument(m) => CliError::Usage(m),
            E::Capacity(m) => CliError::Capacity(format!(
                "{m}; split the problem into per-mode partitions (run `vqe --family ...`) or reduce --sites"
            )),
            other => CliError::Core(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io { path: PathBuf::from("<stream>"), source: e }
    }
}
