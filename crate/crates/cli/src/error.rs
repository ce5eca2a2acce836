use std::path::PathBuf;

use thiserror::Error;

/// Process exit status for each error class.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const USAGE: i32 = 2;
    pub const DOMAIN: i32 = 3;
    pub const IO: i32 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] rewire_core::Error),
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError::Usage(message.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        use rewire_core::Error as Core;
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Core(Core::Parameter(_) | Core::NodeIndex { .. }) => exit::USAGE,
            CliError::Core(Core::Domain(_) | Core::Capacity(_) | Core::Generation(_)) => {
                exit::DOMAIN
            }
            CliError::Parse { .. } | CliError::Io { .. } | CliError::Format { .. } => exit::IO,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
