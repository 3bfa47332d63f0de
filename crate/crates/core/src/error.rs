use thiserror::Error;

use crate::graph::{Color, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("empty list at vertex {0}")]
    EmptyList(Vertex),
    #[error("list assignment covers {got} vertices, graph has {expected}")]
    ListCount { expected: usize, got: usize },
    #[error("color {0} collides with a reserved color")]
    ColorClash(Color),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error("infeasible options: {0}")]
    InfeasibleOptions(String),
    #[error("line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
