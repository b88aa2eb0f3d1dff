use std::fmt;

use bernpoly_core::Error;

/// Failure of a command, carrying its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// A verification ran and at least one check failed (exit 1).
    Failed(String),
    /// Bad arguments or unparsable input (exit 2).
    Usage(String),
    /// `p` outside `(0, 1/2]` (exit 3).
    Range(String),
    /// Reading or writing a file failed (exit 4).
    Io(String),
    /// Input is well-formed but not a member of any supported class (exit 5).
    Semantic(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Range(_) => 3,
            CliError::Io(_) => 4,
            CliError::Semantic(_) => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Failed(m) => write!(f, "verification failed: {m}"),
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Range(m) => write!(f, "out of range: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Semantic(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            e if e.is_range() => CliError::Range(e.to_string()),
            Error::Parse { .. } => CliError::Usage(e.to_string()),
            Error::UnsupportedDimension(_) => CliError::Usage(e.to_string()),
            e => CliError::Semantic(e.to_string()),
        }
    }
}
