use thiserror::Error;

/// Errors produced by instance validation, reductions, solvers and oracles.
#[derive(Debug, Error)]
pub enum Error {
    /// Structural problems with an instance: bad endpoints, negative or
    /// non-finite costs, mismatched requirement vector, self-loops.
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    /// An edge set referenced an edge id the instance does not have.
    #[error("unknown edge id {id} (instance has {edge_count} edges)")]
    UnknownEdge { id: usize, edge_count: usize },

    /// The instance cannot satisfy its requirements even using every edge.
    #[error("infeasible instance: node {node} needs {required} distinct neighbors but only {available} exist")]
    Infeasible {
        node: usize,
        required: usize,
        available: usize,
    },

    /// A cost-scaled variant dropped too many edges to stay feasible; the
    /// caller is expected to move on to the next cost ceiling.
    #[error("instance is infeasible at cost ceiling {ceiling}: node {node} lost too many edges")]
    InfeasibleAtCeiling { ceiling: f64, node: usize },

    /// Slope is undefined on an instance without edges.
    #[error("slope is undefined: instance has no edges")]
    NoEdges,

    /// An exact search was asked to explore more candidates than its guard
    /// allows.
    #[error("exact search guard exceeded: {candidates} candidates > limit {limit}")]
    GuardExceeded { candidates: usize, limit: usize },

    /// A solver configuration fails its own constraints.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// A solution handed to a lift or verification step violates the
    /// contract it was supposed to satisfy.
    #[error("contract violation: {0}")]
    ContractViolation(String),

    /// JSON (de)serialization failure.
    #[error("serialization: {0}")]
    Serde(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
