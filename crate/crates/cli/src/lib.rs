//! Library half of the `crinv` command: jet files, reports and the command
//! implementations, kept out of `main.rs` so tests can call them directly.

pub mod commands;
pub mod jetfile;
pub mod report;

use thiserror::Error;

pub use report::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("{0}")]
    Parse(String),

    /// A report whose checks did not all pass.
    #[error("check failed: {}", .0.first_failure().map(|c| c.name.as_str()).unwrap_or("?"))]
    CheckFailed(Box<Report>),

    #[error(transparent)]
    Engine(#[from] crinv::Error),
}

impl CliError {
    /// 0 success, 1 check failure, 2 usage or parse error, 3 validity error.
    pub fn exit_code(&self) -> i32 {
        use crinv::Error as E;
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 2,
            CliError::CheckFailed(_) => 1,
            CliError::Engine(e) => match e {
                E::Validity { .. } | E::InsufficientValidity { .. } => 3,
                E::Parse(_) | E::Invalid(_) | E::Bidegree { .. } | E::AlphabetMismatch(..) => 2,
                _ => 1,
            },
        }
    }
}
