//! Coverage machinery on bipartite instances: threshold weights, the
//! residual potential, the cheap candidate pool of each round, and the
//! budgeted star-coverage subroutine in greedy and exact form.
//!
//! The subroutine maximizes `f(I) = sum_b w_b * min(deg_I(b), r_b)` over
//! edge sets whose induced center-side cost stays within a budget. Picking
//! any edge set implicitly picks at most one star per center, so the
//! partition constraint of the star formulation is automatic here.

use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use crate::error::{Error, Result};
use crate::instance::{EdgeId, EdgeSet, NodeId};
use crate::reductions::BipartiteInstance;

/// Most candidates the exact coverage search will accept.
pub const EXACT_COVERAGE_GUARD: usize = 24;

/// Per-B-node threshold weights.
///
/// The weight of `b` is the r_b-th smallest cost of reaching a distinct
/// neighbor from `b`, where reaching a neighbor costs the cheapest parallel
/// edge towards it. On simple graphs this is just the r_b-th smallest
/// incident cost at `b`. Every feasible cover pays at least the weight at
/// each covered node, so the weights sum to a lower bound on the optimum.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdWeights {
    pub values: Vec<f64>,
}

impl ThresholdWeights {
    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

/// Cheapest edge cost from `b` to each distinct A-neighbor.
fn neighbor_reach_costs(bip: &BipartiteInstance) -> Vec<BTreeMap<NodeId, f64>> {
    let mut reach: Vec<BTreeMap<NodeId, f64>> = vec![BTreeMap::new(); bip.b_count];
    for e in &bip.edges {
        let slot = reach[e.b].entry(e.a).or_insert(f64::INFINITY);
        if e.cost_b < *slot {
            *slot = e.cost_b;
        }
    }
    reach
}

pub fn threshold_weights(bip: &BipartiteInstance) -> Result<ThresholdWeights> {
    let reach = neighbor_reach_costs(bip);
    let mut values = vec![0.0; bip.b_count];
    for (b, &need) in bip.requirements.iter().enumerate() {
        if need == 0 {
            continue;
        }
        let mut costs: Vec<f64> = reach[b].values().copied().collect();
        if costs.len() < need {
            return Err(Error::Infeasible { node: b, required: need, available: costs.len() });
        }
        costs.sort_by(f64::total_cmp);
        values[b] = costs[need - 1];
    }
    Ok(ThresholdWeights { values })
}

/// Requirement of `b` left over after the distinct neighbors `chosen`
/// already provides.
pub fn residual_requirement(bip: &BipartiteInstance, chosen: &EdgeSet, b: NodeId) -> usize {
    bip.requirements[b].saturating_sub(bip.coverage_degree_b(chosen, b))
}

/// The potential: weighted sum of residual requirements.
pub fn potential(bip: &BipartiteInstance, w: &ThresholdWeights, chosen: &EdgeSet) -> f64 {
    let sets = bip.b_neighbor_sets(chosen);
    bip.requirements
        .iter()
        .enumerate()
        .map(|(b, &need)| w.values[b] * need.saturating_sub(sets[b].len()) as f64)
        .sum()
}

/// Candidate pool of one round, or the signal that nothing is left to do.
#[derive(Debug, Clone, PartialEq)]
pub enum CheapEdges {
    /// The potential is already zero; there is no pool to build.
    AlreadyCovered,
    Candidates(EdgeSet),
}

/// Edges affordable on the B side for the current round: edge `ab` is kept
/// when its b-side cost is at most `gamma * tau * w_b * r_b / phi0`.
///
/// Callers pass the residual instance, so `r_b` here is the residual
/// requirement and `phi0` its potential. Summing the thresholds over B
/// telescopes to `gamma * tau`, which bounds the pool's B-side cost.
pub fn cheap_edges(
    bip: &BipartiteInstance,
    w: &ThresholdWeights,
    tau: f64,
    gamma: f64,
    phi0: f64,
) -> CheapEdges {
    if phi0 <= 0.0 {
        return CheapEdges::AlreadyCovered;
    }
    let mut pool = EdgeSet::new();
    for (id, e) in bip.edges.iter().enumerate() {
        let threshold = gamma * tau * w.values[e.b] * bip.requirements[e.b] as f64 / phi0;
        if e.cost_b <= threshold {
            pool.insert(id);
        }
    }
    CheapEdges::Candidates(pool)
}

/// Coverage objective `f`: each node b earns its weight once per distinct
/// neighbor, up to the requirement passed in.
pub fn coverage_value(
    bip: &BipartiteInstance,
    w: &ThresholdWeights,
    requirements: &[usize],
    chosen: &EdgeSet,
) -> f64 {
    let sets = bip.b_neighbor_sets(chosen);
    (0..bip.b_count)
        .map(|b| w.values[b] * sets[b].len().min(requirements[b]) as f64)
        .sum()
}

/// A center on side A together with the chosen edges around it. The star
/// pays its most expensive center-side edge.
#[derive(Debug, Clone, PartialEq)]
pub struct Star {
    pub center: NodeId,
    pub edges: EdgeSet,
    pub cost: f64,
}

/// Output of the budgeted coverage solvers.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageSolution {
    pub edges: EdgeSet,
    pub stars: Vec<Star>,
    pub value: f64,
    pub a_cost: f64,
    pub b_cost: f64,
}

fn assemble(bip: &BipartiteInstance, w: &ThresholdWeights, chosen: EdgeSet) -> CoverageSolution {
    let mut by_center: BTreeMap<NodeId, EdgeSet> = BTreeMap::new();
    for id in chosen.iter() {
        by_center.entry(bip.edges[id].a).or_default().insert(id);
    }
    let stars = by_center
        .into_iter()
        .map(|(center, edges)| {
            let cost = edges.iter().map(|id| bip.edges[id].cost_a).fold(0.0, f64::max);
            Star { center, edges, cost }
        })
        .collect();
    let (a_cost, b_cost) = bip.level_sums(&chosen);
    let value = coverage_value(bip, w, &bip.requirements, &chosen);
    CoverageSolution { edges: chosen, stars, value, a_cost, b_cost }
}

#[derive(PartialEq)]
struct HeapEntry {
    ratio: f64,
    id: EdgeId,
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // higher ratio first, then lower edge id
        self.ratio.total_cmp(&other.ratio).then_with(|| other.id.cmp(&self.id))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

struct GreedyState<'a> {
    bip: &'a BipartiteInstance,
    w: &'a ThresholdWeights,
    star_max: Vec<f64>,
    covered: Vec<BTreeSet<NodeId>>,
    chosen: EdgeSet,
    a_cost: f64,
}

impl GreedyState<'_> {
    fn gain(&self, id: EdgeId) -> f64 {
        let e = &self.bip.edges[id];
        if self.covered[e.b].len() >= self.bip.requirements[e.b] || self.covered[e.b].contains(&e.a) {
            0.0
        } else {
            self.w.values[e.b]
        }
    }

    fn weight(&self, id: EdgeId) -> f64 {
        let e = &self.bip.edges[id];
        (e.cost_a - self.star_max[e.a]).max(0.0)
    }

    /// Record the edge without touching star costs; callers guarantee the
    /// incremental weight is zero.
    fn take_free(&mut self, id: EdgeId) {
        let e = &self.bip.edges[id];
        self.chosen.insert(id);
        self.covered[e.b].insert(e.a);
    }

    /// Take every currently free positive-gain edge at `center`, in id
    /// order. Free picks never raise the star cost, so one pass suffices.
    fn absorb_free(&mut self, center: NodeId, by_center: &BTreeMap<NodeId, Vec<EdgeId>>) {
        let Some(ids) = by_center.get(&center) else { return };
        for &id in ids {
            if !self.chosen.contains(id) && self.gain(id) > 0.0 && self.weight(id) == 0.0 {
                self.take_free(id);
            }
        }
    }
}

/// Lazy greedy for the budgeted coverage subproblem.
///
/// The unit move is adding a single edge to its center's star. Its knapsack
/// weight is how much that raises the star cost; its gain is the weight of
/// the covered node if that node is still deficient. Zero-weight gains are
/// taken eagerly; otherwise the best gain/weight ratio wins, smallest edge
/// id on ties. Whenever a star grows, the remaining edges at that center
/// get their ratios refreshed. The result is the better of the greedy run
/// and the best single star that fits the budget on its own.
pub fn greedy_budgeted_coverage(
    bip: &BipartiteInstance,
    w: &ThresholdWeights,
    candidates: &EdgeSet,
    tau: f64,
) -> CoverageSolution {
    let mut by_center: BTreeMap<NodeId, Vec<EdgeId>> = BTreeMap::new();
    for id in candidates.iter() {
        by_center.entry(bip.edges[id].a).or_default().push(id);
    }

    let mut st = GreedyState {
        bip,
        w,
        star_max: vec![0.0; bip.a_count],
        covered: vec![BTreeSet::new(); bip.b_count],
        chosen: EdgeSet::new(),
        a_cost: 0.0,
    };

    let centers: Vec<NodeId> = by_center.keys().copied().collect();
    for &center in &centers {
        st.absorb_free(center, &by_center);
    }

    let mut heap = BinaryHeap::new();
    for id in candidates.iter() {
        if !st.chosen.contains(id) && st.gain(id) > 0.0 {
            let wt = st.weight(id);
            if wt > 0.0 {
                heap.push(HeapEntry { ratio: st.gain(id) / wt, id });
            }
        }
    }

    while let Some(entry) = heap.pop() {
        let id = entry.id;
        if st.chosen.contains(id) {
            continue;
        }
        let gain = st.gain(id);
        if gain <= 0.0 {
            continue;
        }
        let wt = st.weight(id);
        if wt == 0.0 {
            st.take_free(id);
            continue;
        }
        let e = &bip.edges[id];
        if st.a_cost - st.star_max[e.a] + e.cost_a > tau {
            // Budget headroom at a center never grows, so this edge is
            // unaffordable for good.
            continue;
        }
        let ratio = gain / wt;
        if ratio < entry.ratio {
            heap.push(HeapEntry { ratio, id });
            continue;
        }
        st.chosen.insert(id);
        st.covered[e.b].insert(e.a);
        st.a_cost += e.cost_a - st.star_max[e.a];
        let center = e.a;
        st.star_max[center] = bip.edges[id].cost_a;
        st.absorb_free(center, &by_center);
        for &other in &by_center[&center] {
            if !st.chosen.contains(other) && st.gain(other) > 0.0 {
                let owt = st.weight(other);
                if owt > 0.0 {
                    heap.push(HeapEntry { ratio: st.gain(other) / owt, id: other });
                }
            }
        }
    }

    let greedy = assemble(bip, w, st.chosen);

    // Partial enumeration: the densest affordable single star can beat a
    // greedy run that spread its budget thin.
    let mut best_star: Option<(f64, EdgeSet)> = None;
    for (_, ids) in &by_center {
        let star: EdgeSet = ids.iter().copied().filter(|&id| bip.edges[id].cost_a <= tau).collect();
        if star.is_empty() {
            continue;
        }
        let value = coverage_value(bip, w, &bip.requirements, &star);
        if best_star.as_ref().map_or(true, |(bv, _)| value > *bv) {
            best_star = Some((value, star));
        }
    }
    match best_star {
        Some((value, star)) if value > greedy.value => assemble(bip, w, star),
        _ => greedy,
    }
}

/// Exact maximizer of the coverage objective under the center-side budget,
/// by depth-first search with an optimistic-coverage bound. Seeded with the
/// greedy answer, so it never returns less and keeps the greedy set when
/// that set is already optimal.
pub fn exact_budgeted_coverage(
    bip: &BipartiteInstance,
    w: &ThresholdWeights,
    candidates: &EdgeSet,
    tau: f64,
) -> Result<CoverageSolution> {
    if candidates.len() > EXACT_COVERAGE_GUARD {
        return Err(Error::GuardExceeded { candidates: candidates.len(), limit: EXACT_COVERAGE_GUARD });
    }
    let cand: Vec<EdgeId> = candidates.iter().collect();
    let greedy = greedy_budgeted_coverage(bip, w, candidates, tau);

    struct Search<'a> {
        bip: &'a BipartiteInstance,
        w: &'a ThresholdWeights,
        cand: &'a [EdgeId],
        tau: f64,
        star_max: Vec<f64>,
        covered: Vec<BTreeSet<NodeId>>,
        chosen: Vec<EdgeId>,
        value: f64,
        a_cost: f64,
        best_value: f64,
        best_set: EdgeSet,
    }

    impl Search<'_> {
        fn optimistic_gain(&self, idx: usize) -> f64 {
            let mut fresh: BTreeMap<NodeId, BTreeSet<NodeId>> = BTreeMap::new();
            for &id in &self.cand[idx..] {
                let e = &self.bip.edges[id];
                if !self.covered[e.b].contains(&e.a) {
                    fresh.entry(e.b).or_default().insert(e.a);
                }
            }
            fresh
                .into_iter()
                .map(|(b, fresh_a)| {
                    let room = self.bip.requirements[b].saturating_sub(self.covered[b].len());
                    self.w.values[b] * room.min(fresh_a.len()) as f64
                })
                .sum()
        }

        fn run(&mut self, idx: usize) {
            if self.value + self.optimistic_gain(idx) <= self.best_value {
                return;
            }
            if idx == self.cand.len() {
                if self.value > self.best_value {
                    self.best_value = self.value;
                    self.best_set = self.chosen.iter().copied().collect();
                }
                return;
            }
            let id = self.cand[idx];
            let e = self.bip.edges[id];
            let new_star = self.star_max[e.a].max(e.cost_a);
            if self.a_cost - self.star_max[e.a] + new_star <= self.tau {
                let old_star = self.star_max[e.a];
                let old_cost = self.a_cost;
                let fresh_neighbor = self.covered[e.b].insert(e.a);
                let gain = if fresh_neighbor && self.covered[e.b].len() <= self.bip.requirements[e.b] {
                    self.w.values[e.b]
                } else {
                    0.0
                };
                self.star_max[e.a] = new_star;
                self.a_cost = old_cost - old_star + new_star;
                self.value += gain;
                self.chosen.push(id);

                self.run(idx + 1);

                self.chosen.pop();
                self.value -= gain;
                self.a_cost = old_cost;
                self.star_max[e.a] = old_star;
                if fresh_neighbor {
                    self.covered[e.b].remove(&e.a);
                }
            }
            self.run(idx + 1);
        }
    }

    let mut search = Search {
        bip,
        w,
        cand: &cand,
        tau,
        star_max: vec![0.0; bip.a_count],
        covered: vec![BTreeSet::new(); bip.b_count],
        chosen: Vec::new(),
        value: 0.0,
        a_cost: 0.0,
        best_value: greedy.value,
        best_set: greedy.edges.clone(),
    };
    search.run(0);
    let best_set = search.best_set;
    Ok(assemble(bip, w, best_set))
}
