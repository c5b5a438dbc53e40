//! End-to-end tests of the installed binary: every command, every exit code.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn actcover(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_actcover"))
        .current_dir(dir)
        .args(args)
        .env_remove("ACTCOVER_THREADS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no exit code")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn gen_args<'a>(seed: &'a str, out: &'a str) -> Vec<&'a str> {
    vec![
        "gen", "--n", "6", "--m", "12", "--k-max", "2", "--theta", "4", "--seed", seed, "--out", out,
    ]
}

#[test]
fn round_trip_gen_solve_verify_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&actcover(dir.path(), &gen_args("7", "inst.json"))), 0);
    let solve = actcover(dir.path(), &["solve", "--in", "inst.json", "--out", "sol.json"]);
    assert_eq!(code(&solve), 0, "{}", stderr(&solve));
    let verify = actcover(dir.path(), &["verify", "--instance", "inst.json", "--solution", "sol.json"]);
    assert_eq!(code(&verify), 0, "{}", stderr(&verify));
}

#[test]
fn generation_is_reproducible_from_the_seed() {
    let dir = tempfile::tempdir().unwrap();
    actcover(dir.path(), &gen_args("11", "a.json"));
    actcover(dir.path(), &gen_args("11", "b.json"));
    actcover(dir.path(), &gen_args("12", "c.json"));
    let a = fs::read(dir.path().join("a.json")).unwrap();
    assert_eq!(a, fs::read(dir.path().join("b.json")).unwrap());
    assert_ne!(a, fs::read(dir.path().join("c.json")).unwrap());
}

#[test]
fn gen_accepts_inf_theta_and_writes_to_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out = actcover(
        dir.path(),
        &["gen", "--n", "4", "--m", "6", "--k-max", "1", "--theta", "inf", "--seed", "3"],
    );
    assert_eq!(code(&out), 0);
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["n"], 4);
    assert_eq!(value["meta"]["generator"]["theta_target"], "inf");
}

#[test]
fn missing_input_exits_one_with_a_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let out = actcover(dir.path(), &["solve", "--in", "absent.json"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("absent.json"));
}

#[test]
fn unknown_flag_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&actcover(dir.path(), &["solve", "--frobnicate"])), 1);
    assert_eq!(code(&actcover(dir.path(), &["--help"])), 0);
}

#[test]
fn infeasible_instance_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("inst.json"),
        r#"{"n": 3, "edges": [{"u": 0, "v": 1, "cu": 1, "cv": 1}], "r": [1, 1, 1]}"#,
    )
    .unwrap();
    let out = actcover(dir.path(), &["solve", "--in", "inst.json"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("node 2"));
}

#[test]
fn tampered_solution_exits_three_naming_the_deficient_node() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("inst.json"),
        r#"{"n": 2, "edges": [{"u": 0, "v": 1, "cu": 2, "cv": 3}], "r": [1, 1]}"#,
    )
    .unwrap();
    actcover(dir.path(), &["solve", "--in", "inst.json", "--out", "sol.json"]);
    let mut sol: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("sol.json")).unwrap()).unwrap();
    sol["edges"] = serde_json::json!([]);
    fs::write(dir.path().join("bad.json"), sol.to_string()).unwrap();
    let out = actcover(dir.path(), &["verify", "--instance", "inst.json", "--solution", "bad.json"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("node 0"));
}

#[test]
fn wrong_cost_exits_three_with_the_recomputed_value() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("inst.json"),
        r#"{"n": 2, "edges": [{"u": 0, "v": 1, "cu": 2, "cv": 3}], "r": [1, 1]}"#,
    )
    .unwrap();
    actcover(dir.path(), &["solve", "--in", "inst.json", "--out", "sol.json"]);
    let mut sol: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("sol.json")).unwrap()).unwrap();
    sol["cost"] = serde_json::json!(4.5);
    fs::write(dir.path().join("bad.json"), sol.to_string()).unwrap();
    let out = actcover(dir.path(), &["verify", "--instance", "inst.json", "--solution", "bad.json"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains('5'), "recomputed cost missing: {}", stderr(&out));
}

#[test]
fn oracle_output_verifies_and_never_exceeds_the_solver() {
    let dir = tempfile::tempdir().unwrap();
    actcover(dir.path(), &gen_args("21", "inst.json"));
    actcover(dir.path(), &["solve", "--in", "inst.json", "--out", "sol.json"]);
    let oracle = actcover(dir.path(), &["oracle", "--in", "inst.json", "--out", "opt.json"]);
    assert_eq!(code(&oracle), 0, "{}", stderr(&oracle));
    let verify = actcover(dir.path(), &["verify", "--instance", "inst.json", "--solution", "opt.json"]);
    assert_eq!(code(&verify), 0, "{}", stderr(&verify));
    let sol: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("sol.json")).unwrap()).unwrap();
    let opt: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("opt.json")).unwrap()).unwrap();
    assert!(opt["cost"].as_f64().unwrap() <= sol["cost"].as_f64().unwrap());
}

#[test]
fn oracle_guard_rejects_large_instances() {
    let dir = tempfile::tempdir().unwrap();
    actcover(dir.path(), &["gen", "--n", "10", "--m", "30", "--seed", "1", "--out", "big.json"]);
    let out = actcover(dir.path(), &["oracle", "--in", "big.json"]);
    assert_eq!(code(&out), 1);
    let relaxed = actcover(dir.path(), &["oracle", "--in", "big.json", "--oracle-guard", "30"]);
    assert_eq!(code(&relaxed), 0, "{}", stderr(&relaxed));
}

#[test]
fn gamma_flag_is_echoed_with_a_recomputed_alpha() {
    let dir = tempfile::tempdir().unwrap();
    actcover(dir.path(), &gen_args("5", "inst.json"));
    let out = actcover(dir.path(), &["solve", "--in", "inst.json", "--gamma", "3"]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["config"]["gamma"], 3.0);
    let eps = 0.5 - std::f64::consts::E.recip();
    let expected = actcover::solver::derive_alpha(3.0, eps);
    assert_eq!(report["config"]["alpha"].as_f64().unwrap(), expected);
    assert!(code(&actcover(dir.path(), &["solve", "--in", "inst.json", "--gamma", "1"])) == 1);
}

#[test]
fn reduce_double_cover_emits_sides_and_origin() {
    let dir = tempfile::tempdir().unwrap();
    actcover(dir.path(), &gen_args("31", "inst.json"));
    let out = actcover(dir.path(), &["reduce", "--in", "inst.json"]);
    assert_eq!(code(&out), 0);
    let bip: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(bip["n"], 12);
    assert_eq!(bip["sides"]["A"].as_array().unwrap().len(), 6);
    assert_eq!(bip["sides"]["B"].as_array().unwrap().len(), 6);
    assert_eq!(bip["origin"].as_array().unwrap().len(), bip["edges"].as_array().unwrap().len());
}

#[test]
fn reduce_scale_quantizes_every_kept_cost() {
    let dir = tempfile::tempdir().unwrap();
    actcover(
        dir.path(),
        &["gen", "--n", "5", "--m", "10", "--k-max", "1", "--theta", "64", "--cost-scale", "10000", "--seed", "2", "--out", "inst.json"],
    );
    let out = actcover(
        dir.path(),
        &["reduce", "--in", "inst.json", "--mode", "scale", "--ceiling", "16384"],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let scaled: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(scaled["meta"]["reduction"], "scale");
    for edge in scaled["edges"].as_array().unwrap() {
        for key in ["cu", "cv"] {
            let c = edge[key].as_f64().unwrap();
            assert!(c >= 1.0 && c.fract() == 0.0, "cost {c} is not a positive integer");
        }
    }
    let missing = actcover(dir.path(), &["reduce", "--in", "inst.json", "--mode", "scale"]);
    assert_eq!(code(&missing), 1, "scale mode without --ceiling must be a usage error");
}

fn compare_in(dir: &Path, threads: Option<&str>, csv: &str) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_actcover"));
    cmd.current_dir(dir).args(["compare", "--dir", "batch", "--out", csv]);
    match threads {
        Some(t) => cmd.env("ACTCOVER_THREADS", t),
        None => cmd.env_remove("ACTCOVER_THREADS"),
    };
    cmd.output().expect("binary runs")
}

fn without_runtime_column(csv: &str) -> Vec<String> {
    csv.lines().map(|l| l.rsplit_once(',').expect("csv line").0.to_owned()).collect()
}

#[test]
fn compare_emits_a_sorted_deterministic_csv() {
    let dir = tempfile::tempdir().unwrap();
    fs::create_dir(dir.path().join("batch")).unwrap();
    for seed in ["3", "1", "2"] {
        let name = format!("batch/inst_{seed}.json");
        let args: Vec<String> = [
            "gen", "--n", "5", "--m", "9", "--k-max", "2", "--theta", "4", "--seed", seed, "--out", &name,
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        let argrefs: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(code(&actcover(dir.path(), &argrefs)), 0);
    }
    actcover(
        dir.path(),
        &["gen", "--n", "8", "--m", "40", "--k-max", "2", "--theta", "4", "--seed", "4", "--out", "batch/above_guard.json"],
    );

    let out = compare_in(dir.path(), None, "run1.csv");
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let csv = fs::read_to_string(dir.path().join("run1.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "instance,n,m,k,theta,alg_cost,opt_cost,ratio,proven_bound,within_bound,runtime_ms"
    );
    assert_eq!(lines.len(), 5);
    let ids: Vec<&str> = lines[1..].iter().map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(ids, vec!["above_guard", "inst_1", "inst_2", "inst_3"]);
    for line in &lines[1..] {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 11);
        assert_eq!(cols[9], "true");
        if *cols.first().unwrap() == "above_guard" {
            assert!(cols[6].is_empty() && cols[7].is_empty(), "guarded row must omit the oracle");
            assert!(!cols[8].is_empty(), "guarded row still carries the proven bound");
        } else {
            assert!(!cols[6].is_empty());
        }
    }

    let sequential = compare_in(dir.path(), Some("0"), "run2.csv");
    assert_eq!(code(&sequential), 0);
    let parallel = compare_in(dir.path(), Some("4"), "run3.csv");
    assert_eq!(code(&parallel), 0);
    let run2 = fs::read_to_string(dir.path().join("run2.csv")).unwrap();
    let run3 = fs::read_to_string(dir.path().join("run3.csv")).unwrap();
    assert_eq!(without_runtime_column(&csv), without_runtime_column(&run2));
    assert_eq!(without_runtime_column(&run2), without_runtime_column(&run3));

    let bad_threads = compare_in(dir.path(), Some("many"), "run4.csv");
    assert_eq!(code(&bad_threads), 1);
}

#[test]
fn compare_rejects_an_empty_directory() {
    let dir = tempfile::tempdir().unwrap();
    fs::create_dir(dir.path().join("batch")).unwrap();
    assert_eq!(code(&compare_in(dir.path(), None, "out.csv")), 1);
}
