use thiserror::Error;

use crate::graph::VertexId;

/// Errors shared across the toolkit.
///
/// Invalid inputs (bad vertex ids, malformed files, parameter violations) are
/// kept apart from internal invariant failures: the latter indicate a bug in
/// this crate, never in the caller's data.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range (graph has {vertex_count} vertices)")]
    InvalidVertex { vertex: VertexId, vertex_count: usize },

    #[error("edge {{{u}, {v}}} not present in the graph")]
    MissingEdge { u: VertexId, v: VertexId },

    #[error("edge id {edge} out of range (graph has {edge_count} edges)")]
    InvalidEdgeId { edge: usize, edge_count: usize },

    #[error("self-loop {{{v}, {v}}} not allowed in a simple graph")]
    SelfLoop { v: VertexId },

    #[error("duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { u: VertexId, v: VertexId },

    #[error("non-positive edge length on {{{u}, {v}}}")]
    NonPositiveLength { u: VertexId, v: VertexId },

    #[error("vertex sets differ: expected {expected} vertices, got {got}")]
    VertexSetMismatch { expected: usize, got: usize },

    #[error("{0} is not a subgraph of the reference graph: extra edge {{{1}, {2}}}")]
    NotSubgraph(&'static str, VertexId, VertexId),

    #[error("operation requires unit edge lengths")]
    RequiresUnitLengths,

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("script violation in round {round}: edge {{{u}, {v}}}: {reason}")]
    ScriptViolation { round: usize, u: VertexId, v: VertexId, reason: String },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("path enumeration budget of {budget} paths exceeded for pair ({u}, {v})")]
    PathBudgetExceeded { u: VertexId, v: VertexId, budget: usize },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
