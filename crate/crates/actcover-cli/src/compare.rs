//! Batch comparison against the exact oracle.

use std::fs;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use actcover::oracle::exact_optimum;
use actcover::solver::{effective_theta_value, proven_ratio_bound, solve};
use actcover::SolveConfig;

use crate::commands::write_output;
use crate::{CompareArgs, Failure};

/// One instance's results; serialized as one CSV line. `opt_cost` and
/// `ratio` are empty when the instance is too large for the oracle, and
/// `within_bound` is vacuously true there. `runtime_ms` is the only column
/// that varies between reruns.
pub struct CompareRow {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub theta: f64,
    pub alg_cost: f64,
    pub opt_cost: Option<f64>,
    pub ratio: Option<f64>,
    pub proven_bound: f64,
    pub within_bound: bool,
    pub runtime_ms: u128,
}

pub const CSV_HEADER: &str =
    "instance,n,m,k,theta,alg_cost,opt_cost,ratio,proven_bound,within_bound,runtime_ms";

fn show(x: f64) -> String {
    if x.is_infinite() {
        "inf".into()
    } else {
        format!("{x}")
    }
}

impl CompareRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.instance,
            self.n,
            self.m,
            self.k,
            show(self.theta),
            show(self.alg_cost),
            self.opt_cost.map(show).unwrap_or_default(),
            self.ratio.map(show).unwrap_or_default(),
            show(self.proven_bound),
            self.within_bound,
            self.runtime_ms,
        )
    }
}

fn process(path: &PathBuf, cfg: &SolveConfig, guard: usize) -> Result<CompareRow, Failure> {
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let inst = crate::commands::read_instance(path)?;
    let start = Instant::now();
    let report = solve(&inst, cfg).map_err(|e| match crate::lib_failure(e) {
        Failure::Input(m) => Failure::Input(format!("{name}: {m}")),
        Failure::Infeasible(m) => Failure::Infeasible(format!("{name}: {m}")),
        other => other,
    })?;
    let runtime_ms = start.elapsed().as_millis();

    let theta = inst.slope().unwrap_or(1.0);
    let theta_eff = effective_theta_value(theta, inst.node_count);
    let k = inst.max_requirement();
    let proven_bound = proven_ratio_bound(k, theta_eff, cfg.gamma, cfg.alpha);

    let (opt_cost, ratio, within_bound) = if inst.edge_count() <= guard {
        let (_, opt) = exact_optimum(&inst, guard)
            .map_err(|e| Failure::Input(format!("{name}: oracle failed: {e}")))?;
        let within = report.cost <= proven_bound * opt;
        let ratio = if opt > 0.0 { Some(report.cost / opt) } else { None };
        (Some(opt), ratio, within)
    } else {
        (None, None, true)
    };

    Ok(CompareRow {
        instance: name,
        n: inst.node_count,
        m: inst.edge_count(),
        k,
        theta,
        alg_cost: report.cost,
        opt_cost,
        ratio,
        proven_bound,
        within_bound,
        runtime_ms,
    })
}

fn worker_count(jobs: usize) -> Result<usize, Failure> {
    let requested = match std::env::var("ACTCOVER_THREADS") {
        Err(_) => std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
        Ok(raw) => raw
            .trim()
            .parse::<usize>()
            .map_err(|_| Failure::Input(format!("ACTCOVER_THREADS must be an integer, got {raw:?}")))?
            .max(1),
    };
    Ok(requested.min(jobs).max(1))
}

pub fn compare(args: &CompareArgs) -> Result<(), Failure> {
    let entries = fs::read_dir(&args.dir)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", args.dir.display())))?;
    let mut jobs: Vec<PathBuf> = entries
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
        .collect();
    jobs.sort();
    if jobs.is_empty() {
        return Err(Failure::Input(format!("no .json instances in {}", args.dir.display())));
    }
    let cfg = args.solver.config()?;

    let results: Vec<Mutex<Option<Result<CompareRow, Failure>>>> =
        jobs.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = worker_count(jobs.len())?;
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(path) = jobs.get(i) else { break };
                let row = process(path, &cfg, args.oracle_guard);
                *results[i].lock().expect("result slot poisoned") = Some(row);
            });
        }
    });

    let mut rows = Vec::with_capacity(jobs.len());
    for slot in results {
        match slot.into_inner().expect("result slot poisoned").expect("worker filled every slot") {
            Ok(row) => rows.push(row),
            Err(failure) => return Err(failure),
        }
    }

    let mut csv = String::from(CSV_HEADER);
    for row in &rows {
        csv.push('\n');
        csv.push_str(&row.to_csv());
    }
    write_output(args.out.as_deref(), &csv)?;

    if let Some(bad) = rows.iter().find(|r| !r.within_bound) {
        return Err(Failure::Bound(format!(
            "instance {}: cost {} exceeds {} * optimum {}",
            bad.instance,
            bad.alg_cost,
            bad.proven_bound,
            bad.opt_cost.unwrap_or(f64::NAN)
        )));
    }
    Ok(())
}
