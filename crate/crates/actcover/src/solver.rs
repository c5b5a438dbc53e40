//! The approximation pipeline: per-round step, the fixed-length main loop,
//! the integer budget search, the tail cover, and the end-to-end solve.
//!
//! A round works on the residual of the current partial solution J: edges
//! of J are gone, as are edges into neighbors a node already counts, and
//! requirements shrink accordingly. Rounds keep the original threshold
//! weights. Each round restricts to edges cheap on the covered side, asks
//! the budgeted coverage solver for a star set within the center-side
//! budget tau, and demands a constant-factor drop of the potential; failing
//! that, tau was too small. A binary search finds the least integer budget
//! whose full run ends with potential at most tau over the effective slope,
//! and a direct tail cover finishes the remaining requirements.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coverage::{
    cheap_edges, exact_budgeted_coverage, greedy_budgeted_coverage, potential, threshold_weights,
    CheapEdges, ThresholdWeights,
};
use crate::error::{Error, Result};
use crate::instance::{EdgeId, EdgeSet, Instance, LevelAssignment, NodeId};
use crate::reductions::{
    bipartite_double_cover, enumerate_ceilings, lift_bipartite_solution, lift_scaled_solution,
    scale_costs, BipartiteInstance,
};

/// Solver parameters. `alpha` is the per-round potential shrink factor and
/// is derived from the other two knobs; build configs through
/// [`SolveConfig::with_parameters`] to keep them consistent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveConfig {
    pub gamma: f64,
    pub epsilon_inner: f64,
    pub alpha: f64,
    pub use_exact_inner: bool,
    pub enable_scaling: bool,
    pub scaling_eps: f64,
}

/// `alpha = 1 - (1 - 1/gamma) * (1 - 1/e - epsilon_inner)`, the round
/// shrink factor a `(1 - 1/e - epsilon)`-good inner solver guarantees.
pub fn derive_alpha(gamma: f64, epsilon_inner: f64) -> f64 {
    1.0 - (1.0 - 1.0 / gamma) * ((1.0 - std::f64::consts::E.recip()) - epsilon_inner)
}

impl SolveConfig {
    pub fn with_parameters(gamma: f64, epsilon_inner: f64) -> Result<Self> {
        let cfg = SolveConfig {
            gamma,
            epsilon_inner,
            alpha: derive_alpha(gamma, epsilon_inner),
            use_exact_inner: false,
            enable_scaling: true,
            scaling_eps: 0.25,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > 1.0) || !self.gamma.is_finite() {
            return Err(Error::InvalidConfig(format!("gamma must exceed 1, got {}", self.gamma)));
        }
        if !self.epsilon_inner.is_finite() || self.epsilon_inner < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "epsilon_inner must be a nonnegative number, got {}",
                self.epsilon_inner
            )));
        }
        if self.alpha != derive_alpha(self.gamma, self.epsilon_inner) {
            return Err(Error::InvalidConfig("alpha is inconsistent with gamma and epsilon_inner".into()));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "derived alpha must be strictly between 0 and 1, got {}",
                self.alpha
            )));
        }
        if !(self.scaling_eps > 0.0) || !self.scaling_eps.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "scaling_eps must be positive, got {}",
                self.scaling_eps
            )));
        }
        Ok(())
    }
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self::with_parameters(2.0, 0.5 - std::f64::consts::E.recip())
            .expect("default parameters are valid")
    }
}

/// Slope clamped into `[2, n]`: the value used inside iteration-count
/// logarithms and the budget-search acceptance test, kept away from 1 so
/// the logarithm is positive and capped at the node count.
pub fn effective_theta_value(slope: f64, n: usize) -> f64 {
    slope.min(n as f64).max(2.0)
}

pub fn effective_theta(bip: &BipartiteInstance) -> f64 {
    match bip.slope() {
        Ok(s) => effective_theta_value(s, bip.b_count),
        Err(_) => 2.0,
    }
}

/// Number of rounds the main loop runs: `ceil(log_{1/alpha}(k * theta_eff))`,
/// zero when nothing is required.
pub fn iteration_budget(k: usize, theta_eff: f64, alpha: f64) -> usize {
    if k == 0 {
        return 0;
    }
    ((k as f64 * theta_eff).ln() / alpha.recip().ln()).ceil() as usize
}

/// The ratio the solver provably stays within at this size:
/// `2 * ((1 + gamma) * iterations + 2)`.
pub fn proven_ratio_bound(k: usize, theta_eff: f64, gamma: f64, alpha: f64) -> f64 {
    2.0 * ((1.0 + gamma) * iteration_budget(k, theta_eff, alpha) as f64 + 2.0)
}

/// What one round did, kept for traces and for test assertions.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    pub tau: f64,
    pub phi_before: f64,
    pub phi_after: f64,
    /// Center-side and covered-side level sums of this round's pick alone.
    pub la: f64,
    pub lb: f64,
    /// Covered-side level sum of the whole cheap pool, and its budget.
    pub cheap_lb: f64,
    pub gamma_tau: f64,
    pub pool_size: usize,
    pub exact_inner: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StepOutcome {
    Accepted { chosen: EdgeSet, record: StepRecord },
    /// The round could not shrink the potential enough within the budget.
    TauTooSmall { phi: f64 },
}

/// Residual of `bip` under partial solution `j`: edges of `j` and edges
/// into already-counted neighbors are removed, requirements drop by the
/// distinct neighbors already supplied. `origin_map` points each surviving
/// edge at its id in `bip`.
fn residual(bip: &BipartiteInstance, j: &EdgeSet) -> BipartiteInstance {
    let covered = bip.b_neighbor_sets(j);
    let mut edges = Vec::new();
    let mut origin_map = Vec::new();
    for (id, e) in bip.edges.iter().enumerate() {
        if j.contains(id) || covered[e.b].contains(&e.a) {
            continue;
        }
        edges.push(*e);
        origin_map.push(id);
    }
    let requirements = bip
        .requirements
        .iter()
        .enumerate()
        .map(|(b, &need)| need.saturating_sub(covered[b].len()))
        .collect();
    BipartiteInstance { a_count: bip.a_count, b_count: bip.b_count, edges, requirements, origin_map }
}

/// One round: build the residual, keep its cheap edges, run the budgeted
/// coverage solver, and accept if the potential fell to `alpha` times its
/// value or less. The pick always satisfies the two level-sum budgets
/// (centers within `tau`, covered side within `gamma * tau`).
pub fn step(
    bip: &BipartiteInstance,
    w: &ThresholdWeights,
    j: &EdgeSet,
    cfg: &SolveConfig,
    tau: f64,
) -> Result<StepOutcome> {
    let phi_before = potential(bip, w, j);
    let mut record = StepRecord {
        tau,
        phi_before,
        phi_after: phi_before,
        la: 0.0,
        lb: 0.0,
        cheap_lb: 0.0,
        gamma_tau: cfg.gamma * tau,
        pool_size: 0,
        exact_inner: cfg.use_exact_inner,
    };
    if phi_before <= 0.0 {
        return Ok(StepOutcome::Accepted { chosen: EdgeSet::new(), record });
    }
    let res = residual(bip, j);
    let pool = match cheap_edges(&res, w, tau, cfg.gamma, phi_before) {
        CheapEdges::AlreadyCovered => EdgeSet::new(),
        CheapEdges::Candidates(pool) => pool,
    };
    record.cheap_lb = res.level_sums(&pool).1;
    record.pool_size = pool.len();
    let inner = if cfg.use_exact_inner {
        exact_budgeted_coverage(&res, w, &pool, tau)?
    } else {
        greedy_budgeted_coverage(&res, w, &pool, tau)
    };
    let chosen: EdgeSet = inner.edges.iter().map(|id| res.origin_map[id]).collect();
    let mut union = j.clone();
    union.union_with(&chosen);
    record.phi_after = potential(bip, w, &union);
    let (la, lb) = bip.level_sums(&chosen);
    record.la = la;
    record.lb = lb;
    debug_assert!(la <= tau && lb <= record.gamma_tau);
    if record.phi_after <= cfg.alpha * phi_before {
        Ok(StepOutcome::Accepted { chosen, record })
    } else {
        Ok(StepOutcome::TauTooSmall { phi: record.phi_after })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LoopOutcome {
    Completed { j: EdgeSet, steps: Vec<StepRecord> },
    TauTooSmall { at_iteration: usize, phi: f64 },
}

/// Run exactly `iteration_budget` rounds from the empty set, accumulating
/// each accepted pick; any round that cannot shrink the potential aborts
/// the run, signalling that the budget must grow.
pub fn main_loop(
    bip: &BipartiteInstance,
    w: &ThresholdWeights,
    cfg: &SolveConfig,
    tau: f64,
) -> Result<LoopOutcome> {
    let k = bip.max_requirement();
    let mut j = EdgeSet::new();
    let mut steps = Vec::new();
    if k == 0 {
        return Ok(LoopOutcome::Completed { j, steps });
    }
    let rounds = iteration_budget(k, effective_theta(bip), cfg.alpha);
    for iteration in 0..rounds {
        match step(bip, w, &j, cfg, tau)? {
            StepOutcome::Accepted { chosen, record } => {
                j.union_with(&chosen);
                steps.push(record);
            }
            StepOutcome::TauTooSmall { phi } => {
                return Ok(LoopOutcome::TauTooSmall { at_iteration: iteration, phi });
            }
        }
    }
    Ok(LoopOutcome::Completed { j, steps })
}

/// Finish a partial solution directly: for every node still short of
/// neighbors, take the required number of cheapest fresh-neighbor edges
/// (cheapest at that node, smallest edge id on ties). Each picked cost is
/// at most the node's threshold weight.
pub fn tail_cover(bip: &BipartiteInstance, w: &ThresholdWeights, j: &EdgeSet) -> Result<EdgeSet> {
    let covered = bip.b_neighbor_sets(j);
    let mut tail = EdgeSet::new();
    for b in 0..bip.b_count {
        let need = bip.requirements[b].saturating_sub(covered[b].len());
        if need == 0 {
            continue;
        }
        let mut reach: BTreeMap<NodeId, (f64, EdgeId)> = BTreeMap::new();
        for (id, e) in bip.edges.iter().enumerate() {
            if e.b != b || j.contains(id) || covered[b].contains(&e.a) {
                continue;
            }
            let slot = reach.entry(e.a).or_insert((f64::INFINITY, usize::MAX));
            if e.cost_b < slot.0 {
                *slot = (e.cost_b, id);
            }
        }
        if reach.len() < need {
            return Err(Error::Infeasible {
                node: b,
                required: bip.requirements[b],
                available: covered[b].len() + reach.len(),
            });
        }
        let mut options: Vec<(f64, EdgeId)> = reach.into_values().collect();
        options.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
        for &(cost, id) in options.iter().take(need) {
            debug_assert!(cost <= w.values[b]);
            tail.insert(id);
        }
    }
    Ok(tail)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbePhase {
    Binary,
    Verify,
    Fallback,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeRecord {
    pub tau: f64,
    pub accepted: bool,
    pub phase: ProbePhase,
}

pub(crate) struct SearchTrail {
    pub probes: Vec<ProbeRecord>,
    pub fallback_used: bool,
}

/// Least integer in `[0, hi]` the predicate accepts, by binary search under
/// the usual monotonicity assumption, with a safety net: the found value is
/// re-verified, and if that re-run rejects (a non-monotone or unstable
/// predicate), the search falls back to doubling up from zero and scanning
/// the bracket linearly. The caller must make the upper bound acceptable.
pub(crate) fn least_accepted_integer<F>(hi: f64, mut pred: F) -> Result<(f64, SearchTrail)>
where
    F: FnMut(f64) -> Result<bool>,
{
    fn probe<F: FnMut(f64) -> Result<bool>>(
        tau: f64,
        phase: ProbePhase,
        pred: &mut F,
        trail: &mut SearchTrail,
    ) -> Result<bool> {
        let accepted = pred(tau)?;
        trail.probes.push(ProbeRecord { tau, accepted, phase });
        Ok(accepted)
    }

    let mut trail = SearchTrail { probes: Vec::new(), fallback_used: false };
    if !probe(hi, ProbePhase::Binary, &mut pred, &mut trail)? {
        return Err(Error::ContractViolation(format!(
            "budget search: the upper bound {hi} was rejected"
        )));
    }
    let mut lo = 0.0f64;
    let mut hi_bound = hi;
    while lo < hi_bound {
        let mid = ((lo + hi_bound) / 2.0).floor();
        if probe(mid, ProbePhase::Binary, &mut pred, &mut trail)? {
            hi_bound = mid;
        } else {
            lo = mid + 1.0;
        }
    }
    if probe(lo, ProbePhase::Verify, &mut pred, &mut trail)? {
        return Ok((lo, trail));
    }
    trail.fallback_used = true;
    let mut prev = -1.0f64;
    let mut target = 0.0f64;
    loop {
        let capped = target.min(hi);
        if probe(capped, ProbePhase::Fallback, &mut pred, &mut trail)? {
            let mut tau = prev + 1.0;
            while tau < capped {
                if probe(tau, ProbePhase::Fallback, &mut pred, &mut trail)? {
                    return Ok((tau, trail));
                }
                tau += 1.0;
            }
            return Ok((capped, trail));
        }
        if capped >= hi {
            return Err(Error::ContractViolation(
                "budget search: the verified upper bound flipped to rejected".into(),
            ));
        }
        prev = capped;
        target = if target == 0.0 { 1.0 } else { target * 2.0 };
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub tau_star: f64,
    pub j: EdgeSet,
    pub steps: Vec<StepRecord>,
    pub probes: Vec<ProbeRecord>,
    pub fallback_used: bool,
}

/// Least integer budget whose main-loop run ends with potential at most
/// `tau / theta_eff`, searched over `[0, ceil(sum of all edge costs)]`.
/// The upper bound always qualifies on feasible instances: every edge is
/// affordable there, so each round's coverage is exact and the potential
/// drops geometrically.
pub fn search_tau(
    bip: &BipartiteInstance,
    w: &ThresholdWeights,
    cfg: &SolveConfig,
) -> Result<SearchOutcome> {
    let hi = bip.edges.iter().map(|e| e.cost_a + e.cost_b).sum::<f64>().ceil();
    let theta_eff = effective_theta(bip);
    let mut accepted_runs: BTreeMap<u64, (EdgeSet, Vec<StepRecord>)> = BTreeMap::new();
    let (tau_star, trail) = least_accepted_integer(hi, |tau| {
        match main_loop(bip, w, cfg, tau)? {
            LoopOutcome::TauTooSmall { .. } => Ok(false),
            LoopOutcome::Completed { j, steps } => {
                let accepted = potential(bip, w, &j) <= tau / theta_eff;
                if accepted {
                    accepted_runs.insert(tau as u64, (j, steps));
                }
                Ok(accepted)
            }
        }
    })?;
    let (j, steps) = accepted_runs
        .get(&(tau_star as u64))
        .cloned()
        .ok_or_else(|| Error::ContractViolation("accepted budget left no recorded run".into()))?;
    Ok(SearchOutcome { tau_star, j, steps, probes: trail.probes, fallback_used: trail.fallback_used })
}

/// Everything one bipartite solve produced, including the quantities the
/// proof chain bounds, so callers and tests can check them directly.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteRun {
    pub solution: EdgeSet,
    pub cost: f64,
    pub tau_star: f64,
    /// Main-loop part and tail part of the solution.
    pub j: EdgeSet,
    pub f: EdgeSet,
    /// Level sums of the two parts on the two sides.
    pub la_j: f64,
    pub lb_j: f64,
    pub la_f: f64,
    pub lb_f: f64,
    /// Potential left after the main loop, before the tail.
    pub phi_final: f64,
    pub sum_w: f64,
    /// Exact slope (`None` on edgeless instances) and its clamped form.
    pub theta: Option<f64>,
    pub theta_eff: f64,
    pub steps: Vec<StepRecord>,
    pub probes: Vec<ProbeRecord>,
    pub fallback_used: bool,
}

/// Budget search plus tail cover on a bipartite instance.
pub fn solve_bipartite(bip: &BipartiteInstance, cfg: &SolveConfig) -> Result<BipartiteRun> {
    cfg.validate()?;
    if let Some((b, available)) = bip.first_deficient_b(&bip.all_edges()) {
        return Err(Error::Infeasible { node: b, required: bip.requirements[b], available });
    }
    let w = threshold_weights(bip)?;
    let search = search_tau(bip, &w, cfg)?;
    let f = tail_cover(bip, &w, &search.j)?;
    let mut solution = search.j.clone();
    solution.union_with(&f);
    if !bip.is_feasible(&solution) {
        return Err(Error::ContractViolation("main loop plus tail cover is not a cover".into()));
    }
    let (la_j, lb_j) = bip.level_sums(&search.j);
    let (la_f, lb_f) = bip.level_sums(&f);
    Ok(BipartiteRun {
        cost: bip.activation_cost(&solution),
        tau_star: search.tau_star,
        phi_final: potential(bip, &w, &search.j),
        sum_w: w.sum(),
        theta: bip.slope().ok(),
        theta_eff: effective_theta(bip),
        j: search.j,
        f,
        solution,
        la_j,
        lb_j,
        la_f,
        lb_f,
        steps: search.steps,
        probes: search.probes,
        fallback_used: search.fallback_used,
    })
}

/// One scaled-and-solved pipeline attempt inside `solve`.
#[derive(Debug, Clone, PartialEq)]
pub struct AttemptRecord {
    /// Cost ceiling of the scaling pass, `None` on the unscaled path.
    pub ceiling: Option<f64>,
    pub outcome: AttemptOutcome,
}

#[derive(Debug, Clone, PartialEq)]
pub enum AttemptOutcome {
    Solved {
        run: Box<BipartiteRun>,
        /// Solution lifted back to the original instance and its cost there.
        lifted: EdgeSet,
        original_cost: f64,
    },
    InfeasibleAtCeiling { node: NodeId },
}

/// Per-solve diagnostics kept in memory only; the JSON report carries the
/// chosen attempt's trace.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Diagnostics {
    pub attempts: Vec<AttemptRecord>,
    /// Index into `attempts` of the outcome the report adopted.
    pub chosen: usize,
}

/// One main-loop round as serialized in a report's `trace`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub phi_before: f64,
    pub phi_after: f64,
    pub la: f64,
    pub lb: f64,
}

impl From<&StepRecord> for TraceEntry {
    fn from(r: &StepRecord) -> Self {
        TraceEntry { phi_before: r.phi_before, phi_after: r.phi_after, la: r.la, lb: r.lb }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub edges: EdgeSet,
    pub levels: LevelAssignment,
    pub cost: f64,
    /// Least accepted budget of the adopted attempt (in that attempt's cost
    /// units, which are the scaled ones when scaling was applied).
    pub tau: f64,
    pub trace: Vec<TraceEntry>,
    pub config: SolveConfig,
    #[serde(skip)]
    pub diagnostics: Diagnostics,
}

impl SolveReport {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

fn run_double_cover_pipeline(inst: &Instance, cfg: &SolveConfig) -> Result<(BipartiteRun, EdgeSet, f64)> {
    let bip = bipartite_double_cover(inst);
    let run = solve_bipartite(&bip, cfg)?;
    let lifted = lift_bipartite_solution(&bip, &run.solution)?;
    let cost = inst.activation_cost(&lifted)?;
    Ok((run, lifted, cost))
}

/// End-to-end solve of an original instance: optionally enumerate cost
/// ceilings and solve a cost-scaled copy per ceiling (keeping the best
/// outcome by original cost, smaller ceiling on ties), otherwise solve the
/// double cover directly; lift back, verify, and report.
///
/// Scaling engages only when the slope is so large that the scaled copy's
/// guaranteed slope bound `n * (rho + 1) / scaling_eps` actually improves
/// on it, with `rho` the proven ratio bound at this size.
pub fn solve(inst: &Instance, cfg: &SolveConfig) -> Result<SolveReport> {
    cfg.validate()?;
    if let Some((node, available)) = inst.first_deficient_node(&inst.all_edges())? {
        return Err(Error::Infeasible { node, required: inst.requirements[node], available });
    }
    let k = inst.max_requirement();
    let slope = if inst.edge_count() == 0 { None } else { Some(inst.slope()?) };
    let scaling = cfg.enable_scaling
        && k > 0
        && slope.map_or(false, |s| {
            let theta_eff = effective_theta_value(s, inst.node_count);
            let rho = proven_ratio_bound(k, theta_eff, cfg.gamma, cfg.alpha);
            s > inst.node_count as f64 * (rho + 1.0) / cfg.scaling_eps
        });

    let mut attempts = Vec::new();
    let mut best: Option<(f64, f64, usize)> = None; // cost, ceiling, attempt index

    if scaling {
        let theta_eff = effective_theta_value(slope.unwrap(), inst.node_count);
        let rho = proven_ratio_bound(k, theta_eff, cfg.gamma, cfg.alpha);
        for ceiling in enumerate_ceilings(inst) {
            match scale_costs(inst, ceiling, rho, cfg.scaling_eps) {
                Err(Error::InfeasibleAtCeiling { node, .. }) => {
                    attempts.push(AttemptRecord {
                        ceiling: Some(ceiling),
                        outcome: AttemptOutcome::InfeasibleAtCeiling { node },
                    });
                }
                Err(e) => return Err(e),
                Ok(scaled) => {
                    let bip = bipartite_double_cover(&scaled.instance);
                    let run = solve_bipartite(&bip, cfg)?;
                    let on_scaled = lift_bipartite_solution(&bip, &run.solution)?;
                    let lifted = lift_scaled_solution(&scaled, &on_scaled)?;
                    if !inst.is_feasible(&lifted)? {
                        return Err(Error::ContractViolation(
                            "lifted scaled solution does not cover the original instance".into(),
                        ));
                    }
                    let original_cost = inst.activation_cost(&lifted)?;
                    let index = attempts.len();
                    attempts.push(AttemptRecord {
                        ceiling: Some(ceiling),
                        outcome: AttemptOutcome::Solved {
                            run: Box::new(run),
                            lifted,
                            original_cost,
                        },
                    });
                    if best.map_or(true, |(c, m, _)| original_cost < c || (original_cost == c && ceiling < m)) {
                        best = Some((original_cost, ceiling, index));
                    }
                }
            }
        }
    } else {
        let (run, lifted, cost) = run_double_cover_pipeline(inst, cfg)?;
        attempts.push(AttemptRecord {
            ceiling: None,
            outcome: AttemptOutcome::Solved { run: Box::new(run), lifted, original_cost: cost },
        });
        best = Some((cost, 0.0, 0));
    }

    let (cost, _, chosen) = best.ok_or_else(|| {
        Error::ContractViolation("every cost ceiling failed on a feasible instance".into())
    })?;
    let AttemptOutcome::Solved { run, lifted, .. } = &attempts[chosen].outcome else {
        return Err(Error::ContractViolation("chosen attempt has no solution".into()));
    };
    let edges = lifted.clone();
    if !inst.is_feasible(&edges)? {
        return Err(Error::ContractViolation("solver produced an infeasible edge set".into()));
    }
    Ok(SolveReport {
        levels: inst.induced_levels(&edges)?,
        cost,
        tau: run.tau_star,
        trace: run.steps.iter().map(TraceEntry::from).collect(),
        edges,
        config: cfg.clone(),
        diagnostics: Diagnostics { attempts: attempts.clone(), chosen },
    })
}

/// Convenience view of the solved attempts inside a report's diagnostics.
pub fn solved_attempts(report: &SolveReport) -> impl Iterator<Item = &BipartiteRun> {
    report.diagnostics.attempts.iter().filter_map(|a| match &a.outcome {
        AttemptOutcome::Solved { run, .. } => Some(run.as_ref()),
        AttemptOutcome::InfeasibleAtCeiling { .. } => None,
    })
}
