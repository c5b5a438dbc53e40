//! Multigraph model for activation edge-multicover.
//!
//! An instance is an undirected multigraph where each edge carries one
//! activation cost per endpoint and each node carries a coverage
//! requirement. Activating an edge set charges every node the maximum
//! endpoint cost among its activated incident edges (zero if none), and a
//! node is covered once it sees the required number of *distinct* neighbors
//! through activated edges. Parallel edges are allowed (they can carry
//! different cost pairs) but never add coverage beyond the first edge to a
//! given neighbor.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type NodeId = usize;
pub type EdgeId = usize;

/// An undirected edge with a separate activation cost at each endpoint.
///
/// Edge ids are implicit: an edge's id is its index in [`Instance::edges`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ActivationEdge {
    pub u: NodeId,
    pub v: NodeId,
    #[serde(rename = "cu")]
    pub cost_u: f64,
    #[serde(rename = "cv")]
    pub cost_v: f64,
}

impl ActivationEdge {
    pub fn new(u: NodeId, v: NodeId, cost_u: f64, cost_v: f64) -> Self {
        ActivationEdge { u, v, cost_u, cost_v }
    }

    pub fn touches(&self, node: NodeId) -> bool {
        self.u == node || self.v == node
    }

    /// Cost charged at `node` when this edge is activated.
    ///
    /// Panics if the edge is not incident to `node`.
    pub fn cost_at(&self, node: NodeId) -> f64 {
        if node == self.u {
            self.cost_u
        } else if node == self.v {
            self.cost_v
        } else {
            panic!("edge {}-{} is not incident to node {node}", self.u, self.v)
        }
    }

    /// The endpoint opposite to `node`.
    pub fn other(&self, node: NodeId) -> NodeId {
        if node == self.u {
            self.v
        } else if node == self.v {
            self.u
        } else {
            panic!("edge {}-{} is not incident to node {node}", self.u, self.v)
        }
    }

    pub fn max_cost(&self) -> f64 {
        self.cost_u.max(self.cost_v)
    }

    pub fn min_cost(&self) -> f64 {
        self.cost_u.min(self.cost_v)
    }
}

/// A set of edge ids. Iteration order is always ascending, which keeps
/// every consumer of this type deterministic.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeSet(BTreeSet<EdgeId>);

impl EdgeSet {
    pub fn new() -> Self {
        EdgeSet(BTreeSet::new())
    }

    pub fn insert(&mut self, id: EdgeId) -> bool {
        self.0.insert(id)
    }

    pub fn remove(&mut self, id: EdgeId) -> bool {
        self.0.remove(&id)
    }

    pub fn contains(&self, id: EdgeId) -> bool {
        self.0.contains(&id)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.0.iter().copied()
    }

    pub fn union_with(&mut self, other: &EdgeSet) {
        self.0.extend(other.iter());
    }

    pub fn intersection(&self, other: &EdgeSet) -> EdgeSet {
        self.0.intersection(&other.0).copied().collect()
    }
}

impl FromIterator<EdgeId> for EdgeSet {
    fn from_iter<T: IntoIterator<Item = EdgeId>>(iter: T) -> Self {
        EdgeSet(iter.into_iter().collect())
    }
}

impl<const N: usize> From<[EdgeId; N]> for EdgeSet {
    fn from(ids: [EdgeId; N]) -> Self {
        ids.into_iter().collect()
    }
}

/// Per-node activation levels induced by an edge set, plus their sum.
///
/// `total` is always the plain left-to-right sum of `levels`, so it can be
/// recomputed exactly from the stored values.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelAssignment {
    pub levels: Vec<f64>,
    pub total: f64,
}

impl LevelAssignment {
    fn from_levels(levels: Vec<f64>) -> Self {
        let total = levels.iter().sum();
        LevelAssignment { levels, total }
    }
}

impl Serialize for LevelAssignment {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.levels.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LevelAssignment {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Ok(LevelAssignment::from_levels(Vec::deserialize(deserializer)?))
    }
}

/// An activation edge-multicover instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    #[serde(rename = "n")]
    pub node_count: usize,
    pub edges: Vec<ActivationEdge>,
    #[serde(rename = "r")]
    pub requirements: Vec<usize>,
    /// Free-form provenance block, e.g. the generator spec that produced
    /// this instance. Ignored by all algorithms.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<serde_json::Value>,
}

impl Instance {
    pub fn new(node_count: usize, edges: Vec<ActivationEdge>, requirements: Vec<usize>) -> Result<Self> {
        let inst = Instance { node_count, edges, requirements, meta: None };
        inst.validate()?;
        Ok(inst)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn validate(&self) -> Result<()> {
        if self.requirements.len() != self.node_count {
            return Err(Error::InvalidInstance(format!(
                "requirement vector has length {} but instance has {} nodes",
                self.requirements.len(),
                self.node_count
            )));
        }
        for (id, e) in self.edges.iter().enumerate() {
            if e.u >= self.node_count || e.v >= self.node_count {
                return Err(Error::InvalidInstance(format!(
                    "edge {id} touches node out of range (n = {})",
                    self.node_count
                )));
            }
            if e.u == e.v {
                return Err(Error::InvalidInstance(format!("edge {id} is a self-loop at node {}", e.u)));
            }
            for c in [e.cost_u, e.cost_v] {
                if !c.is_finite() || c < 0.0 {
                    return Err(Error::InvalidInstance(format!("edge {id} has invalid cost {c}")));
                }
            }
        }
        Ok(())
    }

    fn check_edge_set(&self, set: &EdgeSet) -> Result<()> {
        for id in set.iter() {
            if id >= self.edges.len() {
                return Err(Error::UnknownEdge { id, edge_count: self.edges.len() });
            }
        }
        Ok(())
    }

    /// Activation level of every node under `activated`: the maximum cost
    /// charged to the node by activated incident edges, zero if none.
    pub fn induced_levels(&self, activated: &EdgeSet) -> Result<LevelAssignment> {
        self.check_edge_set(activated)?;
        let mut levels = vec![0.0; self.node_count];
        for id in activated.iter() {
            let e = &self.edges[id];
            if e.cost_u > levels[e.u] {
                levels[e.u] = e.cost_u;
            }
            if e.cost_v > levels[e.v] {
                levels[e.v] = e.cost_v;
            }
        }
        Ok(LevelAssignment::from_levels(levels))
    }

    /// Total activation cost of an edge set: the sum of induced levels.
    pub fn activation_cost(&self, activated: &EdgeSet) -> Result<f64> {
        Ok(self.induced_levels(activated)?.total)
    }

    /// Number of distinct neighbors `node` gains from `activated`.
    /// Parallel edges to the same neighbor count once.
    pub fn coverage_degree(&self, activated: &EdgeSet, node: NodeId) -> Result<usize> {
        self.check_edge_set(activated)?;
        if node >= self.node_count {
            return Err(Error::InvalidInstance(format!("node {node} out of range")));
        }
        let mut seen = BTreeSet::new();
        for id in activated.iter() {
            let e = &self.edges[id];
            if e.touches(node) {
                seen.insert(e.other(node));
            }
        }
        Ok(seen.len())
    }

    /// Distinct-neighbor sets of every node under `activated`.
    pub fn neighbor_sets(&self, activated: &EdgeSet) -> Result<Vec<BTreeSet<NodeId>>> {
        self.check_edge_set(activated)?;
        let mut sets = vec![BTreeSet::new(); self.node_count];
        for id in activated.iter() {
            let e = &self.edges[id];
            sets[e.u].insert(e.v);
            sets[e.v].insert(e.u);
        }
        Ok(sets)
    }

    /// First node whose requirement `activated` fails to meet, together
    /// with the distinct-neighbor count it does provide.
    pub fn first_deficient_node(&self, activated: &EdgeSet) -> Result<Option<(NodeId, usize)>> {
        let sets = self.neighbor_sets(activated)?;
        for (v, need) in self.requirements.iter().enumerate() {
            if sets[v].len() < *need {
                return Ok(Some((v, sets[v].len())));
            }
        }
        Ok(None)
    }

    /// Whether `activated` gives every node its required number of distinct
    /// neighbors.
    pub fn is_feasible(&self, activated: &EdgeSet) -> Result<bool> {
        Ok(self.first_deficient_node(activated)?.is_none())
    }

    /// The full edge set of the instance.
    pub fn all_edges(&self) -> EdgeSet {
        (0..self.edges.len()).collect()
    }

    /// Maximum over edges of (larger endpoint cost) / (smaller endpoint
    /// cost). An all-zero edge contributes 1; a zero/positive pair
    /// contributes infinity. Errors on an edgeless instance.
    pub fn slope(&self) -> Result<f64> {
        if self.edges.is_empty() {
            return Err(Error::NoEdges);
        }
        let mut worst = 1.0f64;
        for e in &self.edges {
            worst = worst.max(edge_slope(e.min_cost(), e.max_cost()));
        }
        Ok(worst)
    }

    pub fn max_requirement(&self) -> usize {
        self.requirements.iter().copied().max().unwrap_or(0)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let inst: Instance = serde_json::from_str(text)?;
        inst.validate()?;
        Ok(inst)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serialization cannot fail")
    }
}

pub(crate) fn edge_slope(min_cost: f64, max_cost: f64) -> f64 {
    if min_cost == 0.0 {
        if max_cost == 0.0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        max_cost / min_cost
    }
}
