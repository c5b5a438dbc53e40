//! Instance transformations that precede the main solver.
//!
//! Two reductions live here. Cost scaling maps an instance with wildly
//! uneven cost pairs onto one whose costs are small integers, at the price
//! of a bounded additive error per node; enumerating the cost ceiling in
//! powers of two recovers a multiplicative guarantee. The bipartite double
//! cover splits every node into a "center" copy and a "covered" copy so
//! that requirements only live on one side, which is the shape the solver
//! works on.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{edge_slope, ActivationEdge, EdgeId, EdgeSet, Instance, NodeId};

/// Result of [`scale_costs`]: the rewritten instance plus everything needed
/// to map solutions back.
#[derive(Debug, Clone)]
pub struct ScaledInstance {
    /// Instance whose costs are the scaled integers.
    pub instance: Instance,
    /// Cost quantum: original costs are divided by this before truncation.
    pub alpha: f64,
    /// Cost ceiling; edges with an endpoint cost above it were dropped.
    pub ceiling: f64,
    /// Edge ids of the source instance that were dropped.
    pub removed_edges: EdgeSet,
    /// Scaled edge id to source edge id.
    pub id_map: Vec<EdgeId>,
}

/// Rewrite `inst` so every kept cost becomes `max(floor(c / alpha), 1)`
/// with `alpha = eps * ceiling / (n * (rho + 1))`.
///
/// Edges with an endpoint cost above `ceiling` are removed. If the removals
/// make some requirement unsatisfiable the instance is infeasible at this
/// ceiling and the caller should try the next one.
///
/// The scaled instance satisfies, for every edge set `J` of the source
/// instance that survives, the sandwich
/// `cost(J)/alpha - n <= scaled_cost(J) <= cost(J)/alpha + n`,
/// and its slope is at most `n * (rho + 1) / eps`.
pub fn scale_costs(inst: &Instance, ceiling: f64, rho: f64, eps: f64) -> Result<ScaledInstance> {
    if !(ceiling > 0.0) || !ceiling.is_finite() {
        return Err(Error::InvalidConfig(format!("cost ceiling must be positive and finite, got {ceiling}")));
    }
    if !(rho >= 1.0) {
        return Err(Error::InvalidConfig(format!("rho must be at least 1, got {rho}")));
    }
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::InvalidConfig(format!("eps must lie in (0, 1], got {eps}")));
    }
    if inst.node_count == 0 {
        return Err(Error::InvalidInstance("cannot scale an instance without nodes".into()));
    }

    let n = inst.node_count as f64;
    let alpha = eps * ceiling / (n * (rho + 1.0));
    let quantize = |c: f64| -> f64 { (c / alpha).floor().max(1.0) };

    let mut edges = Vec::new();
    let mut id_map = Vec::new();
    let mut removed = EdgeSet::new();
    for (id, e) in inst.edges.iter().enumerate() {
        if e.cost_u > ceiling || e.cost_v > ceiling {
            removed.insert(id);
        } else {
            edges.push(ActivationEdge::new(e.u, e.v, quantize(e.cost_u), quantize(e.cost_v)));
            id_map.push(id);
        }
    }

    let scaled = Instance::new(inst.node_count, edges, inst.requirements.clone())?;
    if let Some((node, _)) = scaled.first_deficient_node(&scaled.all_edges())? {
        return Err(Error::InfeasibleAtCeiling { ceiling, node });
    }

    let cost_cap = (ceiling / alpha).ceil();
    let slope_cap = n * (rho + 1.0) / eps;
    for c in scaled.edges.iter().flat_map(|e| [e.cost_u, e.cost_v]) {
        debug_assert!(c.fract() == 0.0 && c >= 1.0, "scaled cost {c} is not a positive integer");
        assert!(c <= cost_cap, "scaled cost {c} exceeds ceiling/alpha = {cost_cap}");
    }
    if !scaled.edges.is_empty() {
        assert!(
            scaled.slope()? <= slope_cap,
            "scaled slope exceeds n(rho+1)/eps = {slope_cap}"
        );
    }

    Ok(ScaledInstance { instance: scaled, alpha, ceiling, removed_edges: removed, id_map })
}

/// Cost ceilings to try: powers of two from 1 up to the first power that
/// reaches the maximum endpoint cost. An all-zero instance gets `[1]`.
pub fn enumerate_ceilings(inst: &Instance) -> Vec<f64> {
    let max_cost = inst
        .edges
        .iter()
        .flat_map(|e| [e.cost_u, e.cost_v])
        .fold(0.0f64, f64::max);
    let mut ceilings = vec![1.0];
    let mut m = 1.0f64;
    while m < max_cost {
        m *= 2.0;
        ceilings.push(m);
    }
    ceilings
}

/// Map a solution of the scaled instance back to source edge ids.
pub fn lift_scaled_solution(scaled: &ScaledInstance, solution: &EdgeSet) -> Result<EdgeSet> {
    let mut lifted = EdgeSet::new();
    for id in solution.iter() {
        let mapped = *scaled
            .id_map
            .get(id)
            .ok_or(Error::UnknownEdge { id, edge_count: scaled.id_map.len() })?;
        lifted.insert(mapped);
    }
    Ok(lifted)
}

/// An edge of a bipartite instance, running from center side A to covered
/// side B. Sides are indexed independently from zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BipartiteEdge {
    pub a: NodeId,
    pub b: NodeId,
    pub cost_a: f64,
    pub cost_b: f64,
}

/// A bipartite activation instance: requirements live on side B only, side
/// A carries implicit requirement zero. Produced by
/// [`bipartite_double_cover`] and consumed by the solver.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteInstance {
    pub a_count: usize,
    pub b_count: usize,
    pub edges: Vec<BipartiteEdge>,
    /// Requirement per B node.
    pub requirements: Vec<usize>,
    /// Edge id to edge id of the instance this one was derived from.
    pub origin_map: Vec<EdgeId>,
}

impl BipartiteInstance {
    pub fn node_count(&self) -> usize {
        self.a_count + self.b_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn all_edges(&self) -> EdgeSet {
        (0..self.edges.len()).collect()
    }

    pub fn max_requirement(&self) -> usize {
        self.requirements.iter().copied().max().unwrap_or(0)
    }

    pub fn slope(&self) -> Result<f64> {
        if self.edges.is_empty() {
            return Err(Error::NoEdges);
        }
        let mut worst = 1.0f64;
        for e in &self.edges {
            worst = worst.max(edge_slope(e.cost_a.min(e.cost_b), e.cost_a.max(e.cost_b)));
        }
        Ok(worst)
    }

    /// Distinct A-neighbors of every B node under `activated`.
    pub fn b_neighbor_sets(&self, activated: &EdgeSet) -> Vec<BTreeSet<NodeId>> {
        let mut sets = vec![BTreeSet::new(); self.b_count];
        for id in activated.iter() {
            let e = &self.edges[id];
            sets[e.b].insert(e.a);
        }
        sets
    }

    pub fn coverage_degree_b(&self, activated: &EdgeSet, b: NodeId) -> usize {
        let mut seen = BTreeSet::new();
        for id in activated.iter() {
            let e = &self.edges[id];
            if e.b == b {
                seen.insert(e.a);
            }
        }
        seen.len()
    }

    pub fn first_deficient_b(&self, activated: &EdgeSet) -> Option<(NodeId, usize)> {
        let sets = self.b_neighbor_sets(activated);
        self.requirements
            .iter()
            .enumerate()
            .find(|(b, need)| sets[*b].len() < **need)
            .map(|(b, _)| (b, sets[b].len()))
    }

    pub fn is_feasible(&self, activated: &EdgeSet) -> bool {
        self.first_deficient_b(activated).is_none()
    }

    /// Activation cost split by side: (sum of A levels, sum of B levels).
    pub fn level_sums(&self, activated: &EdgeSet) -> (f64, f64) {
        let mut a_levels = vec![0.0f64; self.a_count];
        let mut b_levels = vec![0.0f64; self.b_count];
        for id in activated.iter() {
            let e = &self.edges[id];
            if e.cost_a > a_levels[e.a] {
                a_levels[e.a] = e.cost_a;
            }
            if e.cost_b > b_levels[e.b] {
                b_levels[e.b] = e.cost_b;
            }
        }
        (a_levels.iter().sum(), b_levels.iter().sum())
    }

    pub fn activation_cost(&self, activated: &EdgeSet) -> f64 {
        let (la, lb) = self.level_sums(activated);
        la + lb
    }

    /// View this bipartite instance as a plain instance: B nodes keep their
    /// ids, A nodes follow at offset `b_count`, edge ids are unchanged.
    pub fn to_instance(&self) -> Instance {
        let edges = self
            .edges
            .iter()
            .map(|e| ActivationEdge::new(self.b_count + e.a, e.b, e.cost_a, e.cost_b))
            .collect();
        let mut requirements = self.requirements.clone();
        requirements.resize(self.b_count + self.a_count, 0);
        Instance { node_count: self.node_count(), edges, requirements, meta: None }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: BipartiteJson = serde_json::from_str(text)?;
        raw.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&BipartiteJson::from(self)).expect("serialization cannot fail")
    }
}

/// Serialized form: the plain instance schema plus side lists and the
/// origin map.
#[derive(Serialize, Deserialize)]
struct BipartiteJson {
    n: usize,
    edges: Vec<ActivationEdge>,
    r: Vec<usize>,
    sides: SidesJson,
    origin: Vec<EdgeId>,
}

#[derive(Serialize, Deserialize)]
struct SidesJson {
    #[serde(rename = "A")]
    a: Vec<NodeId>,
    #[serde(rename = "B")]
    b: Vec<NodeId>,
}

impl From<&BipartiteInstance> for BipartiteJson {
    fn from(bip: &BipartiteInstance) -> Self {
        let inst = bip.to_instance();
        BipartiteJson {
            n: inst.node_count,
            edges: inst.edges,
            r: inst.requirements,
            sides: SidesJson {
                a: (bip.b_count..bip.b_count + bip.a_count).collect(),
                b: (0..bip.b_count).collect(),
            },
            origin: bip.origin_map.clone(),
        }
    }
}

impl TryFrom<BipartiteJson> for BipartiteInstance {
    type Error = Error;

    fn try_from(raw: BipartiteJson) -> Result<Self> {
        let a_count = raw.sides.a.len();
        let b_count = raw.sides.b.len();
        if a_count + b_count != raw.n || raw.r.len() != raw.n {
            return Err(Error::InvalidInstance("side lists do not partition the node set".into()));
        }
        let expected_b: Vec<NodeId> = (0..b_count).collect();
        let expected_a: Vec<NodeId> = (b_count..b_count + a_count).collect();
        if raw.sides.b != expected_b || raw.sides.a != expected_a {
            return Err(Error::InvalidInstance(
                "expected side B as 0..b_count and side A as the remaining ids".into(),
            ));
        }
        if raw.origin.len() != raw.edges.len() {
            return Err(Error::InvalidInstance("origin map length differs from edge count".into()));
        }
        if raw.r[b_count..].iter().any(|&x| x != 0) {
            return Err(Error::InvalidInstance("side A nodes must have requirement zero".into()));
        }
        let edges = raw
            .edges
            .iter()
            .enumerate()
            .map(|(id, e)| {
                if e.u < b_count || e.u >= raw.n || e.v >= b_count {
                    return Err(Error::InvalidInstance(format!(
                        "edge {id} must run from side A (u) to side B (v)"
                    )));
                }
                Ok(BipartiteEdge { a: e.u - b_count, b: e.v, cost_a: e.cost_u, cost_b: e.cost_v })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BipartiteInstance {
            a_count,
            b_count,
            edges,
            requirements: raw.r[..b_count].to_vec(),
            origin_map: raw.origin,
        })
    }
}

/// Build the bipartite double cover of `inst`.
///
/// Side B keeps the original nodes and their requirements; side A holds a
/// center copy of every node. Each original edge uv becomes two bipartite
/// edges: one from the center copy of u to v and one from the center copy
/// of v to u, each keeping the original cost orientation. Edge `e` maps to
/// bipartite edges `2e` and `2e + 1`.
pub fn bipartite_double_cover(inst: &Instance) -> BipartiteInstance {
    let mut edges = Vec::with_capacity(inst.edges.len() * 2);
    let mut origin_map = Vec::with_capacity(inst.edges.len() * 2);
    for (id, e) in inst.edges.iter().enumerate() {
        edges.push(BipartiteEdge { a: e.u, b: e.v, cost_a: e.cost_u, cost_b: e.cost_v });
        edges.push(BipartiteEdge { a: e.v, b: e.u, cost_a: e.cost_v, cost_b: e.cost_u });
        origin_map.push(id);
        origin_map.push(id);
    }
    BipartiteInstance {
        a_count: inst.node_count,
        b_count: inst.node_count,
        edges,
        requirements: inst.requirements.clone(),
        origin_map,
    }
}

/// The full two-copy image of an original edge set inside the double cover.
pub fn double_cover_image(solution: &EdgeSet) -> EdgeSet {
    solution.iter().flat_map(|e| [2 * e, 2 * e + 1]).collect()
}

/// Map a feasible bipartite solution back to source edge ids, deduplicating
/// the two copies of each source edge.
pub fn lift_bipartite_solution(bip: &BipartiteInstance, solution: &EdgeSet) -> Result<EdgeSet> {
    for id in solution.iter() {
        if id >= bip.edges.len() {
            return Err(Error::UnknownEdge { id, edge_count: bip.edges.len() });
        }
    }
    if let Some((b, have)) = bip.first_deficient_b(solution) {
        return Err(Error::ContractViolation(format!(
            "bipartite solution leaves node {b} with {have} of {} required neighbors",
            bip.requirements[b]
        )));
    }
    Ok(solution.iter().map(|id| bip.origin_map[id]).collect())
}
