use std::io;

use bosecap_core::Error as CoreError;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFY_FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const INFEASIBLE: i32 = 3;
    pub const PARTIAL: i32 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("config {path}:{line}: {reason}")]
    Config {
        path: String,
        line: usize,
        reason: String,
    },
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{failed} check(s) failed")]
    VerifyFailed { failed: usize },
    #[error("{failed} of {total} sweep point(s) failed")]
    PartialSweep { failed: usize, total: usize },
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config { .. } => exit::USAGE,
            CliError::Core(e) => core_exit_code(e),
            CliError::VerifyFailed { .. } => exit::VERIFY_FAILED,
            CliError::PartialSweep { .. } => exit::PARTIAL,
            CliError::Io(_) | CliError::Csv(_) => exit::VERIFY_FAILED,
        }
    }
}

/// Parameter problems map to 3; numerical failures to 1.
fn core_exit_code(e: &CoreError) -> i32 {
    match e {
        CoreError::Domain { .. }
        | CoreError::InvalidParameter { .. }
        | CoreError::Infeasible(_)
        | CoreError::Unsupported(_)
        | CoreError::InfeasibleBracket { .. }
        | CoreError::DimensionMismatch { .. } => exit::INFEASIBLE,
        CoreError::Spectrum(_) | CoreError::NonConvergence { .. } => exit::VERIFY_FAILED,
    }
}
