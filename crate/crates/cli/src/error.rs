use std::path::PathBuf;

use thiserror::Error;

/// Process exit statuses.
pub const EXIT_OK: i32 = 0;
pub const EXIT_BOUND_VIOLATED: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("{0}")]
    Malformed(String),

    #[error("infeasible: {0}")]
    Infeasible(seqsub::Error),

    #[error(transparent)]
    Core(seqsub::Error),

    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Infeasible(_) => EXIT_INFEASIBLE,
            _ => EXIT_MALFORMED,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<seqsub::Error> for CliError {
    fn from(e: seqsub::Error) -> Self {
        let root = match &e {
            seqsub::Error::Round { source, .. } => source.as_ref(),
            other => other,
        };
        match root {
            seqsub::Error::InvalidK { .. }
            | seqsub::Error::TooLarge { .. }
            | seqsub::Error::BelowHalf { .. } => CliError::Infeasible(e),
            _ => CliError::Core(e),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
