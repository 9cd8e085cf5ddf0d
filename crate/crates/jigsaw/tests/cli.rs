use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn jigsaw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jigsaw"))
        .args(args)
        .env_remove("JIGSAW_WORKERS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn gen_cycle_writes_header_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ring.txt");
    let v = json(&jigsaw(&["gen", "cycle", "--n", "1000", "--out", out.to_str().unwrap()]));
    assert_eq!((v["n"].as_u64(), v["m"].as_u64(), v["max_degree"].as_u64()), (Some(1000), Some(1000), Some(2)));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().next(), Some("1000 1000"));
    assert_eq!(text.lines().count(), 1001);
}

#[test]
fn gen_without_out_streams_the_edge_list() {
    let out = jigsaw(&["gen", "star", "--n", "4"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "4 3\n0 3\n1 3\n2 3\n");
    let summary: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(summary["spec"], "star:4");
}

#[test]
fn gen_er_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for path in [&a, &b] {
        json(&jigsaw(&["gen", "er", "--n", "100", "--p", "0.05", "--seed", "7", "--out", path.to_str().unwrap()]));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let other = jigsaw(&["gen", "er", "--n", "100", "--p", "0.05", "--seed", "8"]);
    assert_ne!(other.stdout, std::fs::read(&a).unwrap());
}

#[test]
fn gen_powerlaw_reports_max_degree() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pl.txt");
    let v = json(&jigsaw(&["gen", "powerlaw", "--n", "10000", "--gamma", "2.5", "--seed", "1", "--out", path.to_str().unwrap()]));
    let g = jigsaw::io::load_graph(&path).unwrap();
    assert_eq!(v["max_degree"].as_u64(), Some(g.max_degree() as u64));
    assert_eq!(v["m"].as_u64(), Some(g.edge_count() as u64));
    assert!(g.edges().all(|(u, v)| u < v));
}

#[test]
fn gen_input_errors() {
    assert_eq!(jigsaw(&["gen", "er", "--n", "10"]).status.code(), Some(2));
    assert_eq!(jigsaw(&["gen", "er", "--n", "10", "--p", "1.5"]).status.code(), Some(2));
    assert_eq!(jigsaw(&["gen", "cycle", "--n", "2"]).status.code(), Some(2));
    assert_eq!(jigsaw(&["gen", "torus", "--n", "10"]).status.code(), Some(2));
    assert_eq!(jigsaw(&["gen", "bogus"]).status.code(), Some(2));
    assert_eq!(jigsaw(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn run_triangle_with_single_edge() {
    let dir = tempfile::tempdir().unwrap();
    let puzzle = write(dir.path(), "tri.txt", "3 3\n0 1\n1 2\n0 2\n");
    let people = write(dir.path(), "edge.txt", "3 1\n0 1\n");
    let v = json(&jigsaw(&["run", "--puzzle", &puzzle, "--people", &people]));
    assert_eq!(v["solved"], false);
    assert_eq!(v["rounds"], 1);
    assert_eq!(v["clusters"], 2);
    assert_eq!(v["largest"], 2);
    assert_eq!(v["histogram"]["1"], 1);
    assert_eq!(v["params"]["rule"], "std");
}

#[test]
fn run_identical_connected_graphs() {
    for engine in ["sync", "contraction"] {
        let v = json(&jigsaw(&["run", "--puzzle", "cycle:50", "--people", "cycle:50", "--engine", engine]));
        assert_eq!(v["solved"], true);
        assert_eq!(v["clusters"], 1);
        if engine == "sync" {
            assert_eq!(v["rounds"], 1);
        } else {
            assert!(v["rounds"].is_null());
        }
    }
}

#[test]
fn run_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = jigsaw(&["run", "--puzzle", "cycle:10", "--people", "cycle:11"]);
    assert_eq!(out.status.code(), Some(2));
    let bad = write(dir.path(), "bad.txt", "3 2\n0 1\n1 z\n");
    let out = jigsaw(&["run", "--puzzle", &bad, "--people", "cycle:3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    let split = write(dir.path(), "split.txt", "4 2\n0 1\n2 3\n");
    assert_eq!(jigsaw(&["run", "--puzzle", &split, "--people", "complete:4"]).status.code(), Some(2));
    assert_eq!(jigsaw(&["run", "--puzzle", "missing-file.txt", "--people", "cycle:3"]).status.code(), Some(2));
    assert_eq!(jigsaw(&["run", "--people", "cycle:3"]).status.code(), Some(2));
}

#[test]
fn sweep_endpoints_and_replay() {
    let args = ["sweep", "--puzzle", "cycle:30", "--points", "2", "--min", "0", "--max", "1", "--trials", "25", "--seed", "4", "-q"];
    let out = jigsaw(&args);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "p,trials,solves,fraction,ci_low,ci_high,mean_rounds_solved,mean_rounds_unsolved");
    assert!(lines[1].starts_with("0.0,25,0,0.0,"));
    assert!(lines[2].starts_with("1.0,25,25,1.0,"));
    assert_eq!(jigsaw(&args).stdout, out.stdout);
    let threaded = Command::new(env!("CARGO_BIN_EXE_jigsaw"))
        .args(args)
        .env("JIGSAW_WORKERS", "3")
        .output()
        .unwrap();
    assert_eq!(threaded.stdout, out.stdout);
}

#[test]
fn sweep_default_grid_and_jsonl() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.jsonl");
    let out = jigsaw(&["sweep", "--puzzle", "cycle:100", "--trials", "5", "--format", "jsonl", "--out", path.to_str().unwrap(), "-q"]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let rows: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 21);
    let top = 1.05 * std::f64::consts::PI.powi(2) / (6.0 * 100f64.ln());
    assert!((rows[20]["p"].as_f64().unwrap() - top).abs() < 1e-12);
    assert_eq!(rows[0]["seed"], 0);
    assert_eq!(rows[0]["puzzle"], "cycle:100");
    assert_eq!(rows[0]["generator"], "er");
}

#[test]
fn sweep_reports_progress_on_stderr() {
    let out = jigsaw(&["sweep", "--puzzle", "cycle:20", "--points", "3", "--trials", "40"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("40/40 trials"));
}

#[test]
fn estimate_pc_triangle() {
    let v = json(&jigsaw(&["estimate-pc", "--puzzle", "cycle:3", "--trials", "2000", "--p-max", "1", "--seed", "3", "-q"]));
    let p = v["p_c_hat"].as_f64().unwrap();
    assert!((p - 0.5).abs() < 0.05, "{p}");
    assert_eq!(v["master_seed"], 3);
    assert_eq!(v["params"]["puzzle"], "cycle:3");
    assert!(v["p_low"].as_f64().unwrap() < p && p <= v["p_high"].as_f64().unwrap());
}

#[test]
fn estimate_pc_star_bisect() {
    let v = json(&jigsaw(&["estimate-pc", "--puzzle", "star:1000", "--strategy", "bisect", "--trials", "200", "-q"]));
    let p = v["p_c_hat"].as_f64().unwrap();
    assert!((p - 0.0073).abs() < 0.001, "{p}");
}

#[test]
fn estimate_pc_rejects_disconnected_puzzle() {
    let dir = tempfile::tempdir().unwrap();
    let split = write(dir.path(), "split.txt", "4 2\n0 1\n2 3\n");
    let out = jigsaw(&["estimate-pc", "--puzzle", &split]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("disconnected"));
}

#[test]
fn bounds_for_n_1000() {
    let v = json(&jigsaw(&["bounds", "--n", "1000"]));
    assert!((v["upper"].as_f64().unwrap() - 0.23813).abs() < 1e-5);
    assert!((v["lower_ring"].as_f64().unwrap() - 0.005362).abs() < 1e-6);
    assert!(v["objective_max_over_grid"].as_f64().unwrap() > 1.0 / 27.0);
    assert!(v["objective_at_0_07"].as_f64().unwrap() > 1.0 / 27.0);
    assert_eq!(jigsaw(&["bounds", "--n", "1"]).status.code(), Some(2));
}

#[test]
fn certify_edgeless_and_complete() {
    let dir = tempfile::tempdir().unwrap();
    let edgeless = write(dir.path(), "empty.txt", "16 0\n");
    let v = json(&jigsaw(&["certify", "--people", &edgeless, "--n", "16", "--x", "4"]));
    assert_eq!(v["certified_unsolvable"], true);
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 5);
    assert_eq!(v["ring_solved"], false);
    let v = json(&jigsaw(&["certify", "--people", "complete:16", "--x", "4"]));
    assert_eq!(v["certified_unsolvable"], false);
    assert_eq!(v["ring_solved"], true);
    let out = jigsaw(&["certify", "--people", &edgeless, "--n", "16", "--x", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n >= x^2"));
}

#[test]
fn certified_random_instances_stay_unsolved() {
    let mut certified = 0;
    for seed in 0..100 {
        let people = format!("er:400:0.004:{seed}");
        let v = json(&jigsaw(&["certify", "--people", &people, "--x", "8"]));
        if v["certified_unsolvable"] == true {
            certified += 1;
            assert_eq!(v["ring_solved"], false, "{people}");
        }
    }
    assert!(certified > 0);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "jigsaw.toml",
        "workers = 2\n[sweep]\npuzzle = \"cycle:12\"\ntrials = 7\npoints = 3\nmax = 1.0\n",
    );
    let out = jigsaw(&["--config", &cfg, "sweep", "-q"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().nth(1).unwrap().starts_with("0.0,7,"));
    let out = jigsaw(&["--config", &cfg, "sweep", "--trials", "9", "-q"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().nth(1).unwrap().starts_with("0.0,9,"));

    let bad = write(dir.path(), "bad.toml", "[sweep]\ntrails = 7\n");
    let out = jigsaw(&["--config", &bad, "sweep", "--puzzle", "cycle:5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_exits_zero() {
    assert_eq!(jigsaw(&["--help"]).status.code(), Some(0));
    assert_eq!(jigsaw(&["sweep", "--help"]).status.code(), Some(0));
}
