use thiserror::Error;

use crate::scalar::ExactScalar;

/// Errors raised by the library. Every variant describes a violated
/// precondition; none of the exact algorithms fail on valid input.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("constant term must be {expected}, got {got}")]
    ConstantTerm {
        expected: &'static str,
        got: ExactScalar,
    },
    #[error("{what} needs at least {needed} entries, got {got}")]
    TooShort {
        what: &'static str,
        needed: usize,
        got: usize,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("enumeration of n = {n} lines exceeds the cap of {cap}")]
    EnumerationCap { n: usize, cap: usize },
    #[error("block of size {size} exceeds the model truncation {len}")]
    ModelTruncation { size: usize, len: usize },
    #[error("operator maps |{m}> above the Fock cutoff {cutoff}")]
    FockCutoff { m: usize, cutoff: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
