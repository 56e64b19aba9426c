use std::io;
use std::path::PathBuf;

use serde::Serialize;

/// Exit status for rejected input (bad flags, unreadable or malformed files).
pub const EXIT_INVALID_INPUT: u8 = 1;
/// Exit status when a command that needs a physical state receives an unphysical one.
pub const EXIT_UNPHYSICAL: u8 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },
    #[error("malformed JSON in {path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("state is not physical: {0}")]
    Unphysical(String),
    #[error(transparent)]
    Core(#[from] qudit_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Unphysical(_) | CliError::Core(qudit_core::Error::NotPositive { .. }) => EXIT_UNPHYSICAL,
            _ => EXIT_INVALID_INPUT,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Read { .. } => "read",
            CliError::Write { .. } => "write",
            CliError::Json { .. } => "json",
            CliError::Unphysical(_) => "unphysical",
            CliError::Core(qudit_core::Error::NotPositive { .. }) => "unphysical",
            CliError::Core(_) => "invalid-state",
        }
    }

    /// `{"error": kind, "message": text, "exit_code": n}` on one line.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Report<'a> {
            error: &'a str,
            message: String,
            exit_code: u8,
        }
        serde_json::to_string(&Report { error: self.kind(), message: self.to_string(), exit_code: self.exit_code() })
            .expect("error report serializes")
    }
}
