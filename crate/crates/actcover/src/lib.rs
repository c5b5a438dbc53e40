//! Activation edge-multicover toolkit.
//!
//! An instance is a multigraph with a two-sided cost on every edge and a
//! coverage requirement on every node. A node's activation level under a
//! chosen edge set is the largest cost the set leans on at that node, and
//! the goal is a cheapest-by-total-level set giving every node enough
//! distinct covered neighbors.
//!
//! The crate provides the instance model, the cost-scaling and bipartite
//! double-cover reductions, an approximation solver built around threshold
//! weights and budgeted star coverage, an exact branch-and-bound oracle for
//! small instances, and seeded random generators.

pub mod coverage;
pub mod error;
pub mod generator;
pub mod instance;
pub mod oracle;
pub mod reductions;
pub mod solver;

pub use error::{Error, Result};
pub use generator::GeneratorSpec;
pub use instance::{ActivationEdge, EdgeId, EdgeSet, Instance, LevelAssignment, NodeId};
pub use reductions::{BipartiteInstance, ScaledInstance};
pub use solver::{solve, SolveConfig, SolveReport};
