use std::fmt;

use thiserror::Error;

/// Location-tagged failure from one of the text parsers. Lines and columns
/// are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("containment violated: {0}")]
    Containment(String),

    #[error("matrix is singular (rank {rank} < {size})")]
    Singular { rank: usize, size: usize },

    #[error("capacity exceeded: {what} is {value}, limit {limit}")]
    Capacity {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("not a CSS pair: {0}")]
    NotCssPair(String),

    #[error("invalid encoding: {0}")]
    Encoding(String),

    #[error("logical dimensions differ: {a} vs {b}")]
    LogicalDimension { a: usize, b: usize },

    #[error("invalid error model: {0}")]
    ErrorModel(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("codes are not CNOT-transversal; set allow_non_transversal to simulate anyway")]
    NotTransversal,

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(#[from] ParseError),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// True for errors caused by exceeding a size limit rather than bad input.
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
