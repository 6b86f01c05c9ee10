//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("loop edge ({0}, {0}) is not allowed in a simple graph")]
    LoopEdge(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("operation requires at least {required} vertices, got {got}")]
    DegenerateOrder { required: usize, got: usize },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("partition covers {partition} vertices but the graph has {graph}")]
    PartitionMismatch { partition: usize, graph: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid block count {blocks} for {n} elements")]
    InvalidBlockCount { blocks: usize, n: usize },
    #[error("no admissible connected graph satisfies the constraints")]
    Infeasible,
    #[error("block {0} has a single vertex and cannot be split")]
    SingletonBlock(usize),
    #[error("malformed constraint: {0}")]
    MalformedConstraint(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
