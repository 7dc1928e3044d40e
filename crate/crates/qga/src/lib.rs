//! Command-line front-end for `qga-core`: decompositions from family
//! specs, oracle runs, verification reports, cyclic-subgroup counts,
//! idempotent checks and parameter sweeps.
//!
//! [`run`] evaluates one command line and returns its output and exit
//! status (0 ok, 1 check failure, 2 invalid input), so everything the
//! binary does is testable in-process.

pub mod cli;
pub mod corpus;
pub mod spec;
pub mod sweep;
pub mod verify;

pub use cli::run;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    /// Invalid input: bad flags, malformed JSON, violated preconditions.
    #[error("{0}")]
    Spec(String),
    /// A computation or verification failed.
    #[error("{0}")]
    Check(String),
}

impl CliError {
    pub fn spec(e: impl std::fmt::Display) -> Self {
        CliError::Spec(e.to_string())
    }

    pub fn check(e: impl std::fmt::Display) -> Self {
        CliError::Check(e.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Spec(_) => 2,
            CliError::Check(_) => 1,
        }
    }
}

/// What a command printed and how it exits.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}
