use std::fmt;

use thiserror::Error;

/// Where in an input file a problem was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}", self.line)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{at}: {message}")]
    Parse { at: Location, message: String },
    #[error("dangling node reference `{0}`")]
    DanglingNode(String),
    #[error("duplicate node `{0}`")]
    DuplicateNode(String),
    #[error("self-loop on node `{0}`")]
    SelfLoop(String),
    #[error("invalid cost function: {0}")]
    InvalidCost(String),
    #[error("cost mode mismatch: expected {expected}, found {found}")]
    ModeMismatch { expected: &'static str, found: &'static str },
    #[error("flow {0} is outside the admissible range")]
    FlowOutOfRange(f64),
    #[error("criteria vectors have different lengths ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("paths have different endpoints")]
    EndpointMismatch,
    #[error("invalid route: {0}")]
    InvalidRoute(String),
    #[error("unknown node {0}")]
    UnknownNode(usize),
    #[error("no path from `{0}` to `{1}`")]
    Disconnected(String, String),
    #[error("invalid psychological model: {0}")]
    InvalidModel(String),
    #[error("no alternative path exists")]
    NoAlternative,
    #[error("path enumeration exceeded the limit of {0} paths")]
    EnumerationLimit(usize),
    #[error("invalid option: {0}")]
    InvalidOption(String),
    #[error("invalid subset-sum instance: {0}")]
    InvalidGadget(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
