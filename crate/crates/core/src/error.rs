use thiserror::Error;

use crate::graph::EdgeId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational `{0}` (expected `a/b` or an integer)")]
pub struct ParseRationalError(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: loop on vertex {vertex}")]
    Loop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("invalid orientation: {0}")]
    Orientation(String),
    #[error("not a cycle of the graph: {0}")]
    NotACycle(String),
    #[error("flow is not maximum: an augmenting path exists")]
    NotMaximum,
    #[error("numeric overflow: {0}")]
    Overflow(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid tree decomposition: {0}")]
    Decomposition(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("out of resources: {0}")]
    Resource(String),
    #[error("generator failed: {0}")]
    Generator(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
