use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum DbError {
    #[error("{path}:{line}: {message}")]
    Parse { path: PathBuf, line: usize, message: String },
    #[error("duplicate key {0:?}")]
    DuplicateKey(String),
    #[error("malformed passport key {0:?}")]
    Key(String),
    #[error("record {0:?}: {1}")]
    Invalid(String, String),
    #[error("orbit sizes {parts:?} do not sum to passport size {size}")]
    OrbitSum { size: usize, parts: Vec<usize> },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

pub type Result<T> = std::result::Result<T, DbError>;
