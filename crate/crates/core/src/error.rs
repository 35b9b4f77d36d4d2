use alloc::string::String;
use core::fmt;

/// Errors raised by the core operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Inputs violate an operation's precondition (lengths, parity, pairings, ...).
    Domain(String),
    /// The request is well formed but exceeds what the operation will attempt.
    Capability(String),
    /// Malformed textual input.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {}", msg),
            Error::Capability(msg) => write!(f, "capability error: {}", msg),
            Error::Parse(msg) => write!(f, "parse error: {}", msg),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! domain {
    ($($arg:tt)*) => { $crate::error::Error::Domain(alloc::format!($($arg)*)) };
}
pub(crate) use domain;

impl core::error::Error for Error {}
