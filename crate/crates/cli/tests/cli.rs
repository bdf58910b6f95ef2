//! End-to-end tests of the binary: exit codes, JSON determinism, DOT
//! output, config-file handling, and preset coverage.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lindkit"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn check_exit_codes_follow_verdicts() {
    assert_eq!(run(&["check", "--preset", "lind1101"]).status.code(), Some(0));
    assert_eq!(run(&["check", "--preset", "ferromagnet2"]).status.code(), Some(1));
    assert_eq!(run(&["check", "--preset", "lind1101hsy"]).status.code(), Some(1));
    assert_eq!(run(&["check", "--preset", "lind0101-lind0102"]).status.code(), Some(1));
}

#[test]
fn parse_failures_exit_three() {
    assert_eq!(run(&["check", "--preset", "no-such-model"]).status.code(), Some(3));
    assert_eq!(run(&["check"]).status.code(), Some(3));
    assert_eq!(run(&["check", "--preset", "lind1101", "--bogus-flag"]).status.code(), Some(3));
    assert_eq!(run(&["markov", "--preset", "dephase", "--basis", "sideways"]).status.code(), Some(3));
}

#[test]
fn preset_name_normalization_accepts_underscores() {
    let out = run(&["check", "--preset", "loss_gain"]);
    assert_eq!(out.status.code(), Some(0), "loss_gain is irreducible");
    let out = run(&["check", "--preset", "LOSS-GAIN"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn json_output_is_deterministic() {
    let a = run(&["check", "--preset", "lindsphsx", "--h", "1", "--json"]);
    let b = run(&["check", "--preset", "lindsphsx", "--h", "1", "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "same config must give byte-identical JSON");
    let parsed: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(parsed["schema"], 1);
    assert_eq!(parsed["verdict"], "Irreducible");
    assert_eq!(parsed["algebra_dim"], 4);
    assert_eq!(parsed["support_rank"], 2);
}

#[test]
fn seeded_markov_is_deterministic() {
    let args = ["markov", "--preset", "sp-driven", "--basis", "random:5", "--seed", "7", "--json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let parsed: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(parsed["bases"].as_array().unwrap().len(), 5);
}

#[test]
fn markov_dot_for_ferromagnet_shows_quarter_edges() {
    // e^{-2t} = 1/2 at t = ln(2)/2.
    let out = run(&["markov", "--preset", "ferromagnet2", "--t", "0.346573590279973"]);
    assert_eq!(out.status.code(), Some(1), "classical witness found");
    let text = stdout(&out);
    assert!(text.contains("digraph"));
    assert!(text.contains("[label=\"0.25\"]"));
    assert!(text.contains("[label=\"0.5\"]"));
    assert!(text.contains("reducible"));
}

#[test]
fn markov_dephase_yields_two_disconnected_self_loops() {
    let out = run(&["markov", "--preset", "dephase"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    let self_loops = text.matches("[label=\"1\"]").count();
    assert_eq!(self_loops, 2, "two unit self-loops:\n{text}");
    assert!(!text.contains("↑\" -> \"↓"));
}

#[test]
fn steady_output_for_symmetric_loss_gain_is_maximally_mixed() {
    let out = run(&["steady", "--preset", "loss_gain", "--gp", "1", "--gm", "1", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rho = parsed["max_support_state"].as_array().unwrap();
    let entry = |i: usize, j: usize| rho[i].as_array().unwrap()[j].as_array().unwrap()[0].as_f64().unwrap();
    assert!((entry(0, 0) - 0.5).abs() < 1e-9);
    assert!((entry(1, 1) - 0.5).abs() < 1e-9);
}

#[test]
fn config_file_with_explicit_model() {
    let dir = std::env::temp_dir();
    let path: PathBuf = dir.join("lindkit_test_explicit.json");
    // Loss/gain written out explicitly.
    std::fs::write(
        &path,
        r#"{
            "explicit": {
                "dim": 2,
                "hamiltonian": [[[0,0],[0,0]],[[0,0],[0,0]]],
                "lindblads": [
                    [[[0,0],[1,0]],[[0,0],[0,0]]],
                    [[[0,0],[0,0]],[[1,0],[0,0]]]
                ]
            }
        }"#,
    )
    .unwrap();
    let out = run(&["check", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "explicit loss/gain is irreducible");
    std::fs::remove_file(&path).ok();
}

#[test]
fn config_file_must_pick_exactly_one_model() {
    let dir = std::env::temp_dir();
    let path: PathBuf = dir.join("lindkit_test_ambiguous.json");
    std::fs::write(
        &path,
        r#"{"preset": "lind1101", "explicit": {"dim": 1, "hamiltonian": [[[0,0]]], "lindblads": []}}"#,
    )
    .unwrap();
    assert_eq!(run(&["check", "--config", path.to_str().unwrap()]).status.code(), Some(3));
    std::fs::write(&path, r#"{}"#).unwrap();
    assert_eq!(run(&["check", "--config", path.to_str().unwrap()]).status.code(), Some(3));
    std::fs::remove_file(&path).ok();
}

#[test]
fn config_file_preset_params_and_seed() {
    let dir = std::env::temp_dir();
    let path: PathBuf = dir.join("lindkit_test_preset.json");
    std::fs::write(&path, r#"{"preset": "lindsphsx", "params": {"h": 0.0}, "seed": 11}"#).unwrap();
    // h = 0 makes the driven two-level system reducible.
    assert_eq!(run(&["check", "--config", path.to_str().unwrap()]).status.code(), Some(1));
    // CLI flags override config params.
    let out = run(&["check", "--config", path.to_str().unwrap(), "--h", "1"]);
    assert_eq!(out.status.code(), Some(0));
    std::fs::remove_file(&path).ok();
}

#[test]
fn basis_file_is_accepted() {
    let dir = std::env::temp_dir();
    let path: PathBuf = dir.join("lindkit_test_basis.json");
    let s = 0.5_f64.sqrt();
    std::fs::write(&path, format!("[[[{s},0],[{s},0]],[[{s},0],[{},0]]]", -s)).unwrap();
    let arg = format!("file:{}", path.display());
    let out = run(&["markov", "--preset", "sp-driven", "--basis", &arg]);
    // The rotated basis gives an irreducible classical chain.
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("irreducible"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn parallel_check_matches_sequential_output() {
    let seq = run(&["check", "--preset", "ising-boundary", "--n", "3", "--json"]);
    let par = run(&["check", "--preset", "ising-boundary", "--n", "3", "--parallel", "--json"]);
    assert_eq!(seq.status.code(), Some(0));
    assert_eq!(seq.stdout, par.stdout);
}

#[test]
fn every_preset_runs_end_to_end() {
    // Each preset must parse and produce a verdict at its default size.
    for preset in [
        "lind1101",
        "lind0101-lind0102",
        "lind1101hsy",
        "lind1101-lind1m101",
        "lindsphsx",
        "loss-gain",
        "dephase",
        "sp-driven",
        "ferromagnet2",
        "ising-boundary",
        "xyz-boundary",
        "xx-max",
        "ising-max",
        "xxz-max",
    ] {
        let started = std::time::Instant::now();
        let out = run(&["check", "--preset", preset]);
        let code = out.status.code();
        assert!(
            code == Some(0) || code == Some(1),
            "preset {preset} failed: {:?}\n{}",
            code,
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(
            started.elapsed().as_secs() < 60,
            "preset {preset} exceeded its runtime budget"
        );
    }
}

#[test]
fn tolerance_flag_is_validated() {
    assert_eq!(run(&["check", "--preset", "lind1101", "--tol", "2.0"]).status.code(), Some(3));
    assert_eq!(run(&["check", "--preset", "lind1101", "--tol", "1e-10"]).status.code(), Some(0));
}
