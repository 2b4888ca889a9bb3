use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("requested {requested} eigenpairs of a {n}x{n} matrix")]
    TooManyEigenpairs { requested: usize, n: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error(
        "step sizes violate 1/gamma1 - 5*gamma2 >= beta/2 \
         (gamma1={gamma1}, gamma2={gamma2}, beta={beta}); omit both to use gamma1 = 2/(11*beta), gamma2 = beta"
    )]
    StepSize { gamma1: f64, gamma2: f64, beta: f64 },

    #[error("non-finite value in solver state at iteration {iteration}")]
    NonFinite { iteration: usize },

    #[error("cluster {0} is empty")]
    EmptyCluster(usize),

    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },

    #[error("{path}: {source}")]
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

    pub(crate) fn format(path: impl Into<PathBuf>, message: impl Into<String>) -> Self {
        Error::Format {
            path: path.into(),
            message: message.into(),
        }
    }

    /// Whether the failure stems from bad user input rather than a runtime fault.
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::Io { .. } | Error::NonFinite { .. } | Error::Degenerate(_)
        )
    }
}
