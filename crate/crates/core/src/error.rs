use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Table has the wrong shape or holds an out-of-range index.
    #[error("malformed table: {0}")]
    Malformed(String),

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("generator set is empty")]
    EmptyGenerators,

    #[error("variable x{} has no assigned value", .0 + 1)]
    UnassignedVariable(usize),

    #[error("exponent must be at least 2, got {0}")]
    InvalidExponent(u32),

    #[error("{what} of size {size} exceeds the limit of {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("operation needs at least two elements")]
    Trivial,

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A property that the theory guarantees did not hold on a concrete algebra.
    #[error("falsified: {0}")]
    Falsified(String),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
