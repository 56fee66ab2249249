use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use seqprod::document::MatrixDocument;
use seqprod::{phased_product, Effect, PhaseParameter};
use serde_json::Value;
use tempfile::TempDir;

fn seqprod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seqprod"))
        .args(args)
        .env_remove("SEQPROD_SEED")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

const A: &str = r#"{"dim": 2, "entries": [[0.81, 0], [0, 0], [0, 0], [0.25, 0]]}"#;
const B: &str = r#"{"dim": 2, "entries": [[0.5, 0], [0.2, 0.1], [0.2, -0.1], [0.4, 0]]}"#;

#[test]
fn product_matches_library() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (write(&dir, "a.json", A), write(&dir, "b.json", B));
    let out = seqprod(&["product", "--a", arg(&a), "--b", arg(&b), "--t", "0.5"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let got = MatrixDocument::parse(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    let ea = MatrixDocument::parse(A).unwrap().to_effect().unwrap();
    let eb = MatrixDocument::parse(B).unwrap().to_effect().unwrap();
    let expected = phased_product(&ea, &eb, PhaseParameter::new(0.5).unwrap()).unwrap();
    assert_eq!(got.to_matrix().unwrap(), *expected.matrix().as_matrix());

    let luders = seqprod(&["product", "--a", arg(&a), "--b", arg(&b), "--form", "luders"]);
    assert_eq!(code(&luders), 0);
    assert_ne!(luders.stdout, out.stdout);
}

#[test]
fn product_rejects_bad_input() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", A);
    let big = write(&dir, "big.json", r#"{"dim": 2, "entries": [[1.5, 0], [0, 0], [0, 0], [0.2, 0]]}"#);
    let broken = write(&dir, "broken.json", "{\"dim\": 2");
    let small = write(&dir, "small.json", r#"{"dim": 1, "entries": [[0.5, 0]]}"#);
    let skew = write(&dir, "skew.json", r#"{"dim": 2, "entries": [[0.5, 0], [0.2, 0], [0.1, 0], [0.5, 0]]}"#);
    for bad in [&big, &broken, &small, &skew] {
        let out = seqprod(&["product", "--a", arg(&a), "--b", arg(bad)]);
        assert_eq!(code(&out), 2, "{}", bad.display());
        assert!(out.stdout.is_empty());
    }
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&seqprod(&["product", "--a", arg(&a), "--b", arg(&missing)])), 2);
}

#[test]
fn axioms_replay_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let (first, second) = (dir.path().join("1.json"), dir.path().join("2.json"));
    let common = ["axioms", "--trials", "20", "--dims", "2,3", "--t=-1,1", "--seed", "11"];
    let run = |path: &Path| {
        let mut args = common.to_vec();
        args.extend(["--json-out", arg(path)]);
        seqprod(&args)
    };
    let (o1, o2) = (run(&first), run(&second));
    assert_eq!((code(&o1), code(&o2)), (0, 0));
    let bytes = fs::read(&first).unwrap();
    assert_eq!(bytes, fs::read(&second).unwrap());
    assert_eq!(bytes, o1.stdout);

    let report: Value = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(report["passed"], Value::Bool(true));
    assert_eq!(report["suites"].as_array().unwrap().len(), 2);
    assert_eq!(report["config"]["seed"], 11);
}

#[test]
fn env_seed_overrides_flag() {
    let run = |env: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_seqprod"));
        cmd.args(["nonuniqueness", "--trials", "5", "--seed", "1"]);
        match env {
            Some(v) => cmd.env("SEQPROD_SEED", v),
            None => cmd.env_remove("SEQPROD_SEED"),
        };
        cmd.output().unwrap()
    };
    let with_env: Value = serde_json::from_slice(&run(Some("99")).stdout).unwrap();
    assert_eq!(with_env["config"]["seed"], 99);
    let without: Value = serde_json::from_slice(&run(None).stdout).unwrap();
    assert_eq!(without["config"]["seed"], 1);
    assert_eq!(code(&run(Some("not-a-number"))), 2);
}

#[test]
fn broken_product_fails_axioms() {
    let out = seqprod(&["axioms", "--product", "matrix-product", "--trials", "20", "--dims", "2,3"]);
    assert_eq!(code(&out), 3);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["passed"], Value::Bool(false));
}

#[test]
fn nonuniqueness_exit_codes() {
    let out = seqprod(&["nonuniqueness", "--trials", "50"]);
    assert_eq!(code(&out), 0);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report["witness"]["gap"].as_f64().unwrap() > 0.01);

    assert_eq!(code(&seqprod(&["nonuniqueness", "--trials", "50", "--commuting"])), 4);
    assert_eq!(code(&seqprod(&["nonuniqueness", "--trials", "50", "--t", "0"])), 4);
}

#[test]
fn channel_reports_certificate() {
    let dir = TempDir::new().unwrap();
    let decomposition = write(
        &dir,
        "d.json",
        r#"[{"dim": 2, "entries": [[0.7, 0], [0.1, 0.2], [0.1, -0.2], [0.4, 0]]},
            {"dim": 2, "entries": [[0.3, 0], [-0.1, -0.2], [-0.1, 0.2], [0.6, 0]]}]"#,
    );
    let rho = write(&dir, "rho.json", r#"{"dim": 2, "entries": [[0.6, 0], [0.2, 0.1], [0.2, -0.1], [0.4, 0]]}"#);
    let out = seqprod(&["channel", "--decomposition", arg(&decomposition), "--rho", arg(&rho), "--t", "2"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((report["trace"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert!(report["min_choi_eigenvalue"].as_f64().unwrap() >= -1e-9);
    assert_eq!(report["kraus_count"], 2);

    let partial = write(&dir, "p.json", r#"[{"dim": 2, "entries": [[0.5, 0], [0, 0], [0, 0], [0.5, 0]]}]"#);
    assert_eq!(code(&seqprod(&["channel", "--decomposition", arg(&partial), "--rho", arg(&rho)])), 2);
    let not_state = write(&dir, "s.json", r#"{"dim": 2, "entries": [[0.6, 0], [0, 0], [0, 0], [0.6, 0]]}"#);
    assert_eq!(code(&seqprod(&["channel", "--decomposition", arg(&decomposition), "--rho", arg(&not_state)])), 2);
}

#[test]
fn unknown_tolerance_is_rejected() {
    assert_eq!(code(&seqprod(&["axioms", "--trials", "1", "--tol", "nope=1"])), 2);
    let ok = seqprod(&["axioms", "--trials", "5", "--dims", "2", "--tol", "defect_ceiling=1e-8"]);
    assert_eq!(code(&ok), 0);
    let report: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(report["config"]["tolerance_overrides"]["defect_ceiling"].as_f64(), Some(1e-8));
}

#[test]
fn identity_effect_round_trips_through_cli() {
    let dir = TempDir::new().unwrap();
    let id = write(&dir, "id.json", &seqprod::document::to_json_string(&MatrixDocument::from_matrix(Effect::identity(3).matrix())));
    let b = write(
        &dir,
        "b.json",
        r#"{"dim": 3, "entries": [[0.5, 0], [0.1, 0], [0, 0], [0.1, 0], [0.5, 0], [0, 0.1], [0, 0], [0, -0.1], [0.3, 0]]}"#,
    );
    let out = seqprod(&["product", "--a", arg(&id), "--b", arg(&b)]);
    assert_eq!(code(&out), 0);
    let got = MatrixDocument::parse(std::str::from_utf8(&out.stdout).unwrap()).unwrap().to_matrix().unwrap();
    let expected = MatrixDocument::parse(&fs::read_to_string(&b).unwrap()).unwrap().to_matrix().unwrap();
    assert!(got.frobenius_distance(&expected) < 1e-15);
}
