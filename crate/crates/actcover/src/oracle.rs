//! Exact optimum for small instances.
//!
//! `exact_optimum` is a branch-and-bound search over edge subsets in id
//! order, include branch first, keeping the first strictly best solution it
//! reaches. That visit order makes the reported set deterministic: among
//! all optimal sets it returns the one whose membership vector over edge
//! ids 0,1,2,... is lexicographically largest, i.e. small ids are included
//! whenever a tie allows. `enumerate_optimum` recomputes the same answer by
//! sheer enumeration and exists to cross-check the search.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::instance::{EdgeId, EdgeSet, Instance, NodeId};

/// Most edges `exact_optimum` will accept by default.
pub const DEFAULT_ORACLE_GUARD: usize = 24;

/// Most edges `enumerate_optimum` will accept.
pub const ENUMERATION_GUARD: usize = 14;

struct Search<'a> {
    inst: &'a Instance,
    levels: Vec<f64>,
    covered: Vec<BTreeSet<NodeId>>,
    chosen: Vec<EdgeId>,
    cost: f64,
    best_cost: f64,
    best_set: EdgeSet,
}

impl Search<'_> {
    /// Admissible bound on the cheapest completion: a node still needing d
    /// more neighbors will end at least at the d-th smallest cost of
    /// reaching a fresh neighbor through the undecided edges. `None` means
    /// the branch cannot become feasible at all.
    fn completion_bound(&self, idx: usize) -> Option<f64> {
        let mut bound = self.cost;
        let mut reach: Vec<BTreeMap<NodeId, f64>> = vec![BTreeMap::new(); self.inst.node_count];
        for id in idx..self.inst.edge_count() {
            let e = &self.inst.edges[id];
            for (node, other, cost) in [(e.u, e.v, e.cost_u), (e.v, e.u, e.cost_v)] {
                if !self.covered[node].contains(&other) {
                    let slot = reach[node].entry(other).or_insert(f64::INFINITY);
                    if cost < *slot {
                        *slot = cost;
                    }
                }
            }
        }
        for node in 0..self.inst.node_count {
            let deficit = self.inst.requirements[node].saturating_sub(self.covered[node].len());
            if deficit == 0 {
                continue;
            }
            let mut costs: Vec<f64> = reach[node].values().copied().collect();
            if costs.len() < deficit {
                return None;
            }
            costs.sort_by(f64::total_cmp);
            bound += (costs[deficit - 1] - self.levels[node]).max(0.0);
        }
        Some(bound)
    }

    fn run(&mut self, idx: usize) {
        match self.completion_bound(idx) {
            None => return,
            Some(bound) if bound >= self.best_cost => return,
            Some(_) => {}
        }
        if idx == self.inst.edge_count() {
            self.best_cost = self.cost;
            self.best_set = self.chosen.iter().copied().collect();
            return;
        }

        let e = self.inst.edges[idx];
        let raise_u = (e.cost_u - self.levels[e.u]).max(0.0);
        let raise_v = (e.cost_v - self.levels[e.v]).max(0.0);
        let (old_u, old_v) = (self.levels[e.u], self.levels[e.v]);
        self.levels[e.u] = old_u.max(e.cost_u);
        self.levels[e.v] = old_v.max(e.cost_v);
        self.cost += raise_u + raise_v;
        let fresh_u = self.covered[e.u].insert(e.v);
        let fresh_v = self.covered[e.v].insert(e.u);
        self.chosen.push(idx);

        self.run(idx + 1);

        self.chosen.pop();
        if fresh_u {
            self.covered[e.u].remove(&e.v);
        }
        if fresh_v {
            self.covered[e.v].remove(&e.u);
        }
        self.cost -= raise_u + raise_v;
        self.levels[e.u] = old_u;
        self.levels[e.v] = old_v;

        self.run(idx + 1);
    }
}

pub fn exact_optimum(inst: &Instance, guard: usize) -> Result<(EdgeSet, f64)> {
    if inst.edge_count() > guard {
        return Err(Error::GuardExceeded { candidates: inst.edge_count(), limit: guard });
    }
    if let Some((node, available)) = inst.first_deficient_node(&inst.all_edges())? {
        return Err(Error::Infeasible { node, required: inst.requirements[node], available });
    }
    let mut search = Search {
        inst,
        levels: vec![0.0; inst.node_count],
        covered: vec![BTreeSet::new(); inst.node_count],
        chosen: Vec::new(),
        cost: 0.0,
        best_cost: f64::INFINITY,
        best_set: EdgeSet::new(),
    };
    search.run(0);
    debug_assert!(search.best_cost.is_finite());
    Ok((search.best_set, search.best_cost))
}

/// Reference implementation over all subsets, with the tie-break of
/// `exact_optimum` spelled out: cheapest first, then the lexicographically
/// largest membership vector.
pub fn enumerate_optimum(inst: &Instance) -> Result<(EdgeSet, f64)> {
    let m = inst.edge_count();
    if m > ENUMERATION_GUARD {
        return Err(Error::GuardExceeded { candidates: m, limit: ENUMERATION_GUARD });
    }
    if let Some((node, available)) = inst.first_deficient_node(&inst.all_edges())? {
        return Err(Error::Infeasible { node, required: inst.requirements[node], available });
    }
    let membership = |mask: u64| -> Vec<bool> { (0..m).map(|i| mask & (1 << i) != 0).collect() };
    let mut best: Option<(f64, Vec<bool>, EdgeSet)> = None;
    for mask in 0..(1u64 << m) {
        let set: EdgeSet = (0..m).filter(|i| mask & (1 << i) != 0).collect();
        if !inst.is_feasible(&set)? {
            continue;
        }
        let cost = inst.activation_cost(&set)?;
        let vec = membership(mask);
        let better = match &best {
            None => true,
            Some((bc, bv, _)) => cost < *bc || (cost == *bc && vec > *bv),
        };
        if better {
            best = Some((cost, vec, set));
        }
    }
    let (cost, _, set) = best.expect("feasibility was checked up front");
    Ok((set, cost))
}
