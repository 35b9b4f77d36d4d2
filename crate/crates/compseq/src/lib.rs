//! Std companion to `compseq-core`. It holds the IO formats and the
//! `compseq` command line.

pub mod cli;
pub mod data;
pub mod format;
pub mod parallel;
pub mod report;
pub mod selftest;

use std::fmt;

pub use compseq_core as core;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Core(compseq_core::Error),
    /// A checked predicate was false; already reported on stdout.
    Verify,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verify => 1,
            CliError::Core(compseq_core::Error::Capability(_)) => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {}", m),
            CliError::Io(m) => write!(f, "io error: {}", m),
            CliError::Core(e) => e.fmt(f),
            CliError::Verify => f.write_str("verification failed"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<compseq_core::Error> for CliError {
    fn from(e: compseq_core::Error) -> Self {
        CliError::Core(e)
    }
}
