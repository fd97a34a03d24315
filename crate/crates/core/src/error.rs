use thiserror::Error;

use crate::graph::{ClusterId, Port, VertexId, Violation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range (graph has {n} vertices)")]
    InvalidVertex { vertex: VertexId, n: usize },
    #[error("invalid graph: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("cluster graph is not a tree: cluster {cluster} has predecessors {predecessors:?}")]
    NotATree {
        cluster: ClusterId,
        predecessors: Vec<ClusterId>,
    },
    #[error("cluster {0} is the root cluster and has no ancestor")]
    RootCluster(ClusterId),
    #[error("unknown cluster {0}")]
    InvalidCluster(ClusterId),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

/// Errors raised while reading or writing the JSON graph format.
#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed graph file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("graph file rejected:\n{}", .0.join("\n"))]
    Rejected(Vec<String>),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("bad generator spec `{spec}`: {reason}")]
    Syntax { spec: String, reason: String },
    #[error("invalid parameters: {0}")]
    Parameters(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AgentError {
    #[error("no such port {port} at the current location")]
    NoSuchPort { port: Port },
    #[error("move budget exhausted")]
    BudgetExhausted,
    #[error("invalid environment: {0}")]
    InvalidArgument(String),
    #[error("agent halted without a map")]
    MissingMap,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomotopyError {
    #[error("graph has triangles; only triangle-free graphs can be unfolded")]
    HasTriangles,
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("not a loop: {0}")]
    InvalidLoop(String),
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("trace lacks map snapshots")]
    MissingSnapshots,
    #[error("trace is malformed: {0}")]
    MalformedTrace(String),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Agent(#[from] AgentError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
