use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid mark ({w},{d}): weight must satisfy w >= d+1")]
    InvalidMark { w: u32, d: u32 },
    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),
    #[error("unknown vertex id {0}")]
    UnknownVertex(VertexId),
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(VertexId),
    #[error("edge {0} is a loop and cannot be contracted")]
    LoopContraction(EdgeId),
    #[error("edge {0} is not absorbable")]
    NotAbsorbable(EdgeId),
    #[error("operation requires a forest, but the graph contains a cycle or loop")]
    NotAForest,
    #[error("operation requires a simple graph, but the graph has loops or parallel edges")]
    NotSimple,
    #[error("operation requires all marks to have d = 0")]
    DottedMark,
    #[error("operation requires a strictly weighted graph (all weights >= 2)")]
    NotStrict,
    #[error("brute-force budget exceeded: {what} = {actual} > {limit}")]
    BudgetExceeded {
        what: &'static str,
        actual: usize,
        limit: usize,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
