use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the numerical kernel, the link models and the runner.
#[derive(Debug, Error)]
pub enum Error {
    #[error("gamma function pole at z = {0}")]
    Pole(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid Meijer G specification: {0}")]
    InvalidSpec(String),

    #[error("pole collision: separation {separation:e} is below {min:e}")]
    PoleCollision { separation: f64, min: f64 },

    #[error("no convergence: {0}")]
    NonConvergence(String),

    #[error("config error at {location}: {message}")]
    Config { location: String, message: String },

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("CSV error on {}: {source}", path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
