use std::path::PathBuf;

use thiserror::Error;

/// Problems with the run configuration. The binary exits with code 2.
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },

    #[error("malformed configuration: {0}")]
    Syntax(String),

    #[error("unknown configuration key `{0}`")]
    UnknownKey(String),

    #[error("configuration key `{key}` must be {expected}")]
    Type { key: String, expected: &'static str },

    #[error("invalid configuration: {0}")]
    Validation(String),
}

/// Failures while running an experiment or writing its output. The binary
/// exits with code 3.
#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Engine(#[from] dnwr_core::Error),

    #[error("non-finite value in column `{column}` at row {row}")]
    NonFinite { column: String, row: usize },

    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },

    #[error("experiment worker panicked")]
    Worker,
}
