use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {0} is not in the graph")]
    MemberNotInGraph(VertexId),
    #[error("vertex {0} already exists")]
    DuplicateVertex(VertexId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("edge {0}-{1} already exists")]
    ParallelEdge(VertexId, VertexId),
    #[error("edge {0}-{1} is not in the graph")]
    MissingEdge(VertexId, VertexId),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),
    #[error("rotation system is not planar: {0}")]
    NonPlanarRotation(String),
    #[error("graph is not planar")]
    NonPlanar,
    #[error("invalid merger: {0}")]
    InvalidMerger(String),
    #[error("suppressing {v} would duplicate edge {u}-{w}")]
    WouldCreateParallelEdge {
        v: VertexId,
        u: VertexId,
        w: VertexId,
    },
    #[error("internal invariant broken: {0}")]
    InternalInvariantBroken(String),
    #[error("graph has {n} vertices, limit is {max}")]
    TooLarge { n: usize, max: usize },
    #[error("graph has {n} vertices, exact oracle limit is {max}")]
    OracleTooLarge { n: usize, max: usize },
    #[error("unknown instance name `{0}`")]
    UnknownName(String),
    #[error("generation failed: {0}")]
    GenerationFailed(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
