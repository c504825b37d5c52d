use std::path::PathBuf;

use thiserror::Error;

/// Failures that stop a run before any report is written; all map to
/// exit status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read `{path}`: {source}")]
    Read { path: PathBuf, source: std::io::Error },

    #[error("cannot write `{path}`: {source}")]
    Write { path: PathBuf, source: std::io::Error },

    #[error("config parse error: {0}")]
    Parse(String),

    #[error("invalid config:\n  - {}", .0.join("\n  - "))]
    Invalid(Vec<String>),

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}
