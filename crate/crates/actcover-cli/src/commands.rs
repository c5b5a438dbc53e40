//! The single-instance subcommands.

use std::fs;
use std::path::Path;

use actcover::generator::{generate, GeneratorSpec};
use actcover::oracle::exact_optimum;
use actcover::reductions::{bipartite_double_cover, scale_costs};
use actcover::{EdgeSet, Instance};

use crate::{lib_failure, Failure, GenArgs, OracleArgs, ReduceArgs, ReduceMode, SolveArgs, VerifyArgs};

pub fn read_instance(path: &Path) -> Result<Instance, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    Instance::from_json(&text)
        .map_err(|e| Failure::Input(format!("{} is not a valid instance: {e}", path.display())))
}

pub fn write_output(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

pub fn gen(args: &GenArgs) -> Result<(), Failure> {
    let spec = GeneratorSpec {
        n: args.n,
        m: args.m,
        k_max: args.k_max,
        theta_target: args.theta,
        cost_scale: args.cost_scale,
        seed: args.seed,
        bipartite: args.bipartite,
    };
    let inst = generate(&spec).map_err(lib_failure)?;
    write_output(args.out.as_deref(), &inst.to_json())
}

pub fn reduce(args: &ReduceArgs) -> Result<(), Failure> {
    let inst = read_instance(&args.input)?;
    let text = match args.mode {
        ReduceMode::DoubleCover => bipartite_double_cover(&inst).to_json(),
        ReduceMode::Scale => {
            let ceiling = args.ceiling.expect("clap enforces --ceiling in scale mode");
            let scaled = scale_costs(&inst, ceiling, args.rho, args.eps).map_err(lib_failure)?;
            let mut out = scaled.instance;
            out.meta = Some(serde_json::json!({
                "reduction": "scale",
                "ceiling": scaled.ceiling,
                "alpha": scaled.alpha,
                "removed_edges": scaled.removed_edges.iter().collect::<Vec<_>>(),
                "source_ids": scaled.id_map,
            }));
            out.to_json()
        }
    };
    write_output(args.out.as_deref(), &text)
}

pub fn solve(args: &SolveArgs) -> Result<(), Failure> {
    let inst = read_instance(&args.input)?;
    let cfg = args.solver.config()?;
    let report = actcover::solver::solve(&inst, &cfg).map_err(lib_failure)?;
    write_output(args.out.as_deref(), &report.to_json())
}

pub fn verify(args: &VerifyArgs) -> Result<(), Failure> {
    let inst = read_instance(&args.instance)?;
    let text = fs::read_to_string(&args.solution)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", args.solution.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("{} is not JSON: {e}", args.solution.display())))?;
    let ids = value["edges"]
        .as_array()
        .ok_or_else(|| Failure::Input("solution file has no \"edges\" array".into()))?;
    let mut edges = EdgeSet::new();
    for id in ids {
        let id = id
            .as_u64()
            .ok_or_else(|| Failure::Input(format!("edge id {id} is not an integer")))?;
        edges.insert(id as usize);
    }
    let reported = value["cost"]
        .as_f64()
        .ok_or_else(|| Failure::Input("solution file has no numeric \"cost\"".into()))?;

    if let Some((node, got)) = inst.first_deficient_node(&edges).map_err(lib_failure)? {
        return Err(Failure::Verification(format!(
            "node {node} has {got} distinct neighbors, requires {}",
            inst.requirements[node]
        )));
    }
    let recomputed = inst.activation_cost(&edges).map_err(lib_failure)?;
    if recomputed != reported {
        return Err(Failure::Verification(format!(
            "cost mismatch: solution claims {reported}, recomputation gives {recomputed}"
        )));
    }
    println!("ok: {} edges, cost {recomputed}", edges.len());
    Ok(())
}

pub fn oracle(args: &OracleArgs) -> Result<(), Failure> {
    let inst = read_instance(&args.input)?;
    let (edges, cost) = exact_optimum(&inst, args.oracle_guard).map_err(lib_failure)?;
    let levels = inst.induced_levels(&edges).map_err(lib_failure)?;
    let out = serde_json::json!({
        "edges": edges.iter().collect::<Vec<_>>(),
        "levels": levels.levels,
        "cost": cost,
    });
    write_output(
        args.out.as_deref(),
        &serde_json::to_string_pretty(&out).expect("serialization cannot fail"),
    )
}
