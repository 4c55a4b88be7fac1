//! Crate-wide error type.

use std::path::PathBuf;

use thiserror::Error;

use crate::model::Violations;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: malformed record: {source}")]
    MalformedLine {
        path: PathBuf,
        line: u64,
        #[source]
        source: serde_json::Error,
    },

    #[error("{path}:{line}: invalid record: {violations}")]
    InvalidRecord {
        path: PathBuf,
        line: u64,
        violations: Violations,
    },

    #[error("schema version mismatch in {path}: found {found:?}, expected {expected:?}")]
    SchemaVersion {
        path: PathBuf,
        found: String,
        expected: String,
    },

    #[error("invariant violations: {0}")]
    Validation(Violations),

    #[error("integrity check failed: {0}")]
    Integrity(String),

    #[error("{0}")]
    InvalidInput(String),

    #[error("json serialization: {0}")]
    Json(#[from] serde_json::Error),
}

impl CoreError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CoreError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn invalid_input(msg: impl Into<String>) -> Self {
        CoreError::InvalidInput(msg.into())
    }

    pub fn integrity(msg: impl Into<String>) -> Self {
        CoreError::Integrity(msg.into())
    }
}
