use thiserror::Error;

/// Errors raised by monoid construction and queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("element index {0} is not in the carrier")]
    NotInCarrier(u32),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("multiset {0} is not composable")]
    NotComposable(String),
    #[error("invalid monoid: {0}")]
    Invalid(String),
    #[error("invalid parameter for `{tag}`: {reason}")]
    InvalidParameter { tag: String, reason: String },
}

/// Errors raised while building or combining simplicial sets and maps.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplicialError {
    #[error("malformed simplicial set: {0}")]
    Malformed(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("depth mismatch: {0} vs {1}")]
    DepthMismatch(usize, usize),
    #[error("subcomplex is not closed under {op}: level {level}, simplex `{simplex}`")]
    NotClosed { op: &'static str, level: usize, simplex: String },
    #[error("map is not simplicial: {0}")]
    NotSimplicial(String),
    #[error("base space is not connected ({0} components)")]
    Disconnected(usize),
    #[error("{0}")]
    Unsupported(String),
    #[error("internal invariant broken: {0}")]
    Internal(String),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("complex needs depth {needed}, space is materialized to depth {available}")]
    InsufficientDepth { needed: usize, available: usize },
    #[error("boundary of boundary is nonzero in degree {0}")]
    BoundaryNotNilpotent(usize),
    #[error("homology computed through degree {available}, comparison needs {needed}")]
    DegreeRange { needed: usize, available: usize },
    #[error("matrix dimension mismatch: {0}")]
    Dimension(String),
}

/// A parse failure in one of the text formats, with its 1-based line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError { line, message: message.into() }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
