//! IO, file formats, and command plumbing for the `ckp` binary.
//!
//! The library side exists so the command implementations are callable (and
//! testable) without spawning a process: each `cmd_*` function returns the
//! exit code together with the full run report.

pub mod cli;
pub mod commands;
pub mod report;
pub mod schema;

pub use commands::{cmd_certify, cmd_generate, cmd_solve, cmd_validate, CommandOutput};
pub use report::{ReportPayload, RunReport};
pub use schema::InstanceFile;

use std::path::PathBuf;

/// Errors that abort a command before it can produce a verdict. These map
/// to exit code 2 (structural/usage), distinct from exit code 1 (a check
/// that ran and failed).
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parse error in {path} at line {line}, column {column}: {source}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        source: serde_json::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Metric(#[from] ckp_core::MetricError),
    #[error(transparent)]
    Cyclic(#[from] ckp_core::CyclicError),
    #[error(transparent)]
    Certify(#[from] ckp_core::CertifyError),
    #[error(transparent)]
    Solve(#[from] ckp_core::SolveError),
    #[error(transparent)]
    Gen(#[from] ckp_core::GenError),
}

/// Exit-code contract: 0 success/holds, 1 a condition failed, 2 structural
/// or usage error.
pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_STRUCTURAL: i32 = 2;
