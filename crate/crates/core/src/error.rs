//! Error type shared by every module of the crate.

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed CSV input; `row` is 1-based counting the header as row 1.
    #[error("ingest error at row {row}, column {column}: {message}")]
    Ingest {
        row: usize,
        column: String,
        message: String,
    },

    #[error("config error: {0}")]
    Config(String),

    /// Per-sample failures of a preprocessing step.
    #[error("preprocessing failed for samples [{}]: {message}", sample_ids.join(", "))]
    Samples {
        sample_ids: Vec<String>,
        message: String,
    },

    #[error("split error: {0}")]
    Split(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("unknown label(s): {}", .0.join(", "))]
    UnknownLabel(Vec<String>),

    #[error("pagerank did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("model parse error: {0}")]
    ModelParse(String),

    #[error("model version mismatch: file has version {found}, this build reads version {expected}")]
    VersionMismatch { found: u64, expected: u64 },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit status used by the command-line front end.
    ///
    /// 2 = input error, 3 = config error, 4 = runtime error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Ingest { .. }
            | Error::Io { .. }
            | Error::ModelParse(_)
            | Error::VersionMismatch { .. }
            | Error::UnknownLabel(_) => 2,
            Error::Config(_) | Error::Split(_) => 3,
            Error::Samples { .. }
            | Error::Dimension { .. }
            | Error::NoConvergence { .. }
            | Error::Invalid(_) => 4,
        }
    }
}
