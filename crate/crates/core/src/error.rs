use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("manifest {path}: {message}")]
    Manifest { path: PathBuf, message: String },
    #[error("{path}:{line}: {message}")]
    Record {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("invalid system: {0}")]
    InvalidSystem(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("basis/value kind mismatch: {0}")]
    BasisMismatch(String),
    #[error("{modes} spin orbitals exceed the dense-construction limit of {max}")]
    TooLarge { modes: usize, max: usize },
    #[error("circuit: {0}")]
    Circuit(String),
    #[error("physical error rate {0} is at or above the surface-code threshold (1%)")]
    AboveThreshold(f64),
    #[error("no factory reaches output error {required:e} per state at p = {p_phys}")]
    NoFactory { required: f64, p_phys: f64 },
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
