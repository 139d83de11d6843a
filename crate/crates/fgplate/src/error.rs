//! Error types shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside a documented precondition (non-positive temperature,
    /// volume fraction outside [0,1], ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Bad mesh or element geometry (non-positive Jacobian, degenerate cut).
    #[error("mesh error: {0}")]
    Mesh(String),

    /// Configuration file problems: parse failures, unknown keys, range checks.
    #[error("config error: {0}")]
    Config(String),

    /// Numerical failure: singular factorization, eigensolver non-convergence.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// A pipeline stage failed while running a case; names the stage.
    #[error("stage '{stage}' failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn mesh(msg: impl Into<String>) -> Self {
        Error::Mesh(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }

    pub fn in_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}
