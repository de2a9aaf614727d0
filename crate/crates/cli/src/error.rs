use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {reason}")]
    StateFile { path: PathBuf, reason: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] stabc_core::Error),
    #[error("{failed} of {total} checks failed")]
    ChecksFailed { failed: usize, total: usize },
}

impl CliError {
    /// 1 for a failed numerical check, 2 for anything the user has to fix.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::ChecksFailed { .. } | CliError::Core(stabc_core::Error::Constraint { .. }) => 1,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::ChecksFailed { failed: 1, total: 3 }.exit_code(), 1);
        let breach = stabc_core::Error::Constraint {
            what: "x",
            deviation: 1.0,
            tolerance: 0.0,
        };
        assert_eq!(CliError::Core(breach).exit_code(), 1);
        assert_eq!(CliError::Core(stabc_core::Error::NotPrime(4)).exit_code(), 2);
        assert_eq!(CliError::Usage("bad".into()).exit_code(), 2);
    }
}
