use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qdisc_cli::json::{BoundsJson, CertificateJson, ClosedFormsJson, EnsembleJson, MatrixJson, ResultJson, StateJson};

fn qdisc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdisc")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stderr_lines(o: &Output) -> usize {
    String::from_utf8_lossy(&o.stderr).lines().count()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn example(dir: &Path, d: &str, lambda: &str, emit: &str) -> PathBuf {
    let out = dir.join(format!("{emit}-{d}-{lambda}.json"));
    let o = qdisc(&["example", "--d", d, "--lambda", lambda, "--emit", emit, "--output", path_str(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    out
}

fn read<T: serde::de::DeserializeOwned>(p: &Path) -> T {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn closed_forms_at_d2() {
    let o = qdisc(&["example", "--d", "2", "--lambda", "1", "--emit", "closed-forms"]);
    assert_eq!(code(&o), 0);
    let cf: ClosedFormsJson = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((cf.p_g, cf.q_g, cf.gap), (1.0, 0.5, 0.5));
}

#[test]
fn example_ensemble_at_d3() {
    let dir = tempfile::tempdir().unwrap();
    let e: EnsembleJson = read(&example(dir.path(), "3", "0.5", "ensemble"));
    assert_eq!(e.states.len(), 12);
    assert!(e.states.iter().all(|s| s.prior == 1.0 / 12.0));
    assert_eq!((e.d1, e.d2), (3, 3));
}

#[test]
fn example_rejects_small_d() {
    let o = qdisc(&["example", "--d", "1", "--lambda", "1", "--emit", "closed-forms"]);
    assert_eq!(code(&o), 2);
    assert_eq!(stderr_lines(&o), 1);
}

#[test]
fn example_with_custom_sigma() {
    let dir = tempfile::tempdir().unwrap();
    let sigma = dir.path().join("sigma.json");
    let diag = [0.1, 0.2, 0.3, 0.4];
    let data = (0..16).map(|k| if k % 5 == 0 { [diag[k / 5], 0.0] } else { [0.0, 0.0] }).collect();
    std::fs::write(&sigma, serde_json::to_string(&MatrixJson { rows: 4, cols: 4, data }).unwrap()).unwrap();
    let out = dir.path().join("e.json");
    let o = qdisc(&[
        "example",
        "--d",
        "2",
        "--lambda",
        "0.5",
        "--sigma",
        path_str(&sigma),
        "--emit",
        "ensemble",
        "--output",
        path_str(&out),
    ]);
    assert_eq!(code(&o), 0);
    let e: EnsembleJson = read(&out);
    // λ|Ψ1><Ψ1| + (1-λ)σ has (0,0) entry 0.25 + 0.05
    assert!((e.states[0].rho.data[0][0] - 0.3).abs() < 1e-15);
}

#[test]
fn solve_example_pg_and_qg() {
    let dir = tempfile::tempdir().unwrap();
    let e = example(dir.path(), "2", "1", "ensemble");
    for (problem, want) in [("pg", 1.0), ("qg", 0.5), ("ppt", 0.5)] {
        let out = dir.path().join(format!("{problem}.json"));
        let o = qdisc(&["solve", "--problem", problem, "--input", path_str(&e), "--output", path_str(&out)]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let r: ResultJson = read(&out);
        assert_eq!(r.problem, problem);
        assert!((r.value - want).abs() < 1e-6);
        assert!(r.certified_gap >= 0.0 && r.certified_gap <= 1e-8);
        assert_eq!(r.povm.len(), 4);
        // the written file round-trips exactly
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<ResultJson>(&text).unwrap(), r);
    }
}

#[test]
fn malformed_input_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ \"d1\": 2, ").unwrap();
    let out = dir.path().join("out.json");
    let o = qdisc(&["solve", "--problem", "pg", "--input", path_str(&bad), "--output", path_str(&out)]);
    assert_eq!(code(&o), 2);
    assert_eq!(stderr_lines(&o), 1);
    assert!(!out.exists());
}

#[test]
fn invalid_ensemble_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let rho = MatrixJson { rows: 1, cols: 1, data: vec![[1.0, 0.0]] };
    let e = EnsembleJson {
        d1: 1,
        d2: 1,
        separable: false,
        states: vec![StateJson { prior: 0.6, rho: rho.clone() }, StateJson { prior: 0.6, rho }],
    };
    let input = dir.path().join("e.json");
    std::fs::write(&input, serde_json::to_string(&e).unwrap()).unwrap();
    let out = dir.path().join("out.json");
    let o = qdisc(&["solve", "--problem", "qg", "--input", path_str(&input), "--output", path_str(&out)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("priors"));
}

#[test]
fn unreachable_tolerance_is_a_solver_failure() {
    let dir = tempfile::tempdir().unwrap();
    let e = example(dir.path(), "2", "1", "ensemble");
    let out = dir.path().join("out.json");
    let o = qdisc(&["solve", "--problem", "pg", "--input", path_str(&e), "--output", path_str(&out), "--tol", "1e-20"]);
    assert_eq!(code(&o), 3);
    assert_eq!(stderr_lines(&o), 1);
    assert!(!out.exists());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&qdisc(&["solve", "--problem", "xx"])), 2);
    assert_eq!(code(&qdisc(&["frobnicate"])), 2);
    let o = qdisc(&["solve", "--problem", "pg", "--bogus"]);
    assert_eq!(code(&o), 2);
    assert_eq!(stderr_lines(&o), 1);
}

#[test]
fn certify_local_povm() {
    let dir = tempfile::tempdir().unwrap();
    let e = example(dir.path(), "3", "0.5", "ensemble");
    let local = example(dir.path(), "3", "0.5", "local-povm");
    let o = qdisc(&["certify", "--problem", "qg", "--ensemble", path_str(&e), "--povm", path_str(&local)]);
    assert_eq!(code(&o), 0);
    let report: CertificateJson = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report.kind, "QG_OPT");
    assert!(report.passed && report.lagrangian_residuals.len() == 12);

    let o = qdisc(&["certify", "--problem", "pg", "--ensemble", path_str(&e), "--povm", path_str(&local)]);
    assert_eq!(code(&o), 1);
    let report: CertificateJson = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report.kind, "GLOBAL_OPT");
    assert!(!report.passed);
}

#[test]
fn certify_accepts_solver_output() {
    let dir = tempfile::tempdir().unwrap();
    let e = example(dir.path(), "2", "0.5", "ensemble");
    let out = dir.path().join("r.json");
    assert_eq!(code(&qdisc(&["solve", "--problem", "pg", "--input", path_str(&e), "--output", path_str(&out)])), 0);
    let o = qdisc(&["certify", "--problem", "pg", "--ensemble", path_str(&e), "--povm", path_str(&out)]);
    assert_eq!(code(&o), 0);
}

#[test]
fn certify_count_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let e = example(dir.path(), "2", "1", "ensemble");
    let povm = example(dir.path(), "3", "1", "global-povm");
    let o = qdisc(&["certify", "--problem", "pg", "--ensemble", path_str(&e), "--povm", path_str(&povm)]);
    assert_eq!(code(&o), 2);
    assert_eq!(stderr_lines(&o), 1);
}

#[test]
fn bounds_on_example_and_single_state() {
    let dir = tempfile::tempdir().unwrap();
    let e = example(dir.path(), "2", "1", "ensemble");
    let o = qdisc(&["bounds", "--input", path_str(&e)]);
    assert_eq!(code(&o), 0);
    let b: BoundsJson = serde_json::from_slice(&o.stdout).unwrap();
    assert!((b.p_g - 1.0).abs() < 1e-6 && (b.q_g - 0.5).abs() < 1e-6 && (b.p_ppt - 0.5).abs() < 1e-6);
    assert!(b.ordering_ok && !b.nlwe_flag);

    let single = EnsembleJson {
        d1: 2,
        d2: 1,
        separable: true,
        states: vec![StateJson {
            prior: 1.0,
            rho: MatrixJson { rows: 2, cols: 2, data: vec![[0.5, 0.0], [0.0, 0.0], [0.0, 0.0], [0.5, 0.0]] },
        }],
    };
    let input = dir.path().join("single.json");
    std::fs::write(&input, serde_json::to_string(&single).unwrap()).unwrap();
    let o = qdisc(&["bounds", "--input", path_str(&input)]);
    assert_eq!(code(&o), 0);
    let b: BoundsJson = serde_json::from_slice(&o.stdout).unwrap();
    for v in [b.p_g, b.q_g, b.p_ppt] {
        assert!((v - 1.0).abs() < 1e-8);
    }
    assert!(b.ordering_ok && !b.nlwe_flag);
}

#[test]
fn separable_diagonal_states_raise_no_flag() {
    let dir = tempfile::tempdir().unwrap();
    let diag = |v: [f64; 4]| MatrixJson {
        rows: 4,
        cols: 4,
        data: (0..16).map(|k| if k % 5 == 0 { [v[k / 5], 0.0] } else { [0.0, 0.0] }).collect(),
    };
    let e = EnsembleJson {
        d1: 2,
        d2: 2,
        separable: true,
        states: vec![
            StateJson { prior: 0.5, rho: diag([0.7, 0.1, 0.1, 0.1]) },
            StateJson { prior: 0.5, rho: diag([0.1, 0.2, 0.3, 0.4]) },
        ],
    };
    let input = dir.path().join("diag.json");
    std::fs::write(&input, serde_json::to_string(&e).unwrap()).unwrap();
    let o = qdisc(&["bounds", "--input", path_str(&input)]);
    assert_eq!(code(&o), 0);
    let b: BoundsJson = serde_json::from_slice(&o.stdout).unwrap();
    assert!(!b.nlwe_flag && (b.p_g - b.q_g).abs() < 2e-8);
}
