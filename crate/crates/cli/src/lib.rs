//! Library half of the `fixpoint` binary: instance-file schema, report
//! shapes, command implementations, and the pinned reproduction table.
//! Everything here is deterministic given the inputs, so machine reports
//! are byte-stable run over run.

pub mod commands;
pub mod instance;
pub mod report;
pub mod repro;

use fixpoint_core::Error as CoreError;

/// Process exit codes: `0` verdict PASS, `1` a hypothesis or bound
/// failed (including NOT_APPLICABLE and NON_CONVERGED), `2` the input
/// was rejected, `3` the tool caught itself being inconsistent.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_HYPOTHESIS: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] CoreError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid instance file {path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("{0}")]
    Input(String),
}

impl CliError {
    /// Map an error to the documented exit code. Out-of-range
    /// hypotheses (a rate outside its family's interval, divergence,
    /// truncation) are failures of the claim, not of the input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e {
                CoreError::Domain(_)
                | CoreError::Divergence { .. }
                | CoreError::Truncation { .. } => EXIT_HYPOTHESIS,
                CoreError::Inconsistency(_) => EXIT_INTERNAL,
                _ => EXIT_INPUT,
            },
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Input(_) => EXIT_INPUT,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
