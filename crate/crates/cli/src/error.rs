use std::path::PathBuf;

use thiserror::Error;

/// Failures of a CLI command, each mapped to its own exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("{context}: {source}")]
    Validation {
        context: String,
        #[source]
        source: qdiv::Error,
    },

    #[error("{0}")]
    Dimension(qdiv::Error),

    #[error("{0}")]
    NotAPreserver(qdiv::Error),

    #[error("{0}")]
    ChecksFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::ChecksFailed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io { .. } | CliError::Parse { .. } => 3,
            CliError::Validation { .. } => 4,
            CliError::Dimension(_) => 5,
            CliError::NotAPreserver(_) => 6,
        }
    }

    pub fn parse(path: impl Into<PathBuf>, message: impl ToString) -> Self {
        CliError::Parse {
            path: path.into(),
            message: message.to_string(),
        }
    }

    /// Wraps a library error, routing dimension and preserver failures to
    /// their dedicated variants.
    pub fn from_core(context: impl Into<String>, e: qdiv::Error) -> Self {
        match e {
            qdiv::Error::DimensionMismatch { .. } => CliError::Dimension(e),
            qdiv::Error::NotAPreserver { .. } | qdiv::Error::Degenerate(_) => CliError::NotAPreserver(e),
            qdiv::Error::Parameter(m) => CliError::Usage(m),
            other => CliError::Validation {
                context: context.into(),
                source: other,
            },
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
