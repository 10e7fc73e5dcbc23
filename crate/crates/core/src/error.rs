use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid edge ({u}, {v}) for graph with {n} nodes: {reason}")]
    InvalidEdge {
        u: usize,
        v: usize,
        n: usize,
        reason: &'static str,
    },

    #[error("invalid edge count: requested {requested}, at most {max} possible")]
    InvalidEdgeCount { requested: usize, max: usize },

    #[error("invalid probability {0}; expected a value in [0, 1]")]
    InvalidProbability(f64),

    #[error("dimension mismatch: expected length {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("invalid edges-penalty parameter {0}")]
    InvalidGamma(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("non-finite gradient at iteration {iteration}")]
    Numerical { iteration: usize },

    #[error("graph has {n} nodes; the exact oracle supports at most {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
