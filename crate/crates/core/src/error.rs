use std::fmt;

use thiserror::Error;

/// Errors produced by the enumeration library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("universe size mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("instance is satisfiable")]
    InstanceSatisfiable,

    #[error("oracle failure: {0}")]
    Oracle(String),

    #[error("status table is not monotone: {unsat} is unsatisfiable but its superset {sat} is satisfiable")]
    NotMonotone { unsat: String, sat: String },

    #[error("universe of {n} constraints exceeds the limit of {limit} for this operation")]
    TooLarge { n: usize, limit: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A DIMACS parse failure, tagged with the 1-based line it was detected on.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}
