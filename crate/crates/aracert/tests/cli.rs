//! End-to-end tests of the command-line interface: output shapes, exit
//! codes, and determinism.

use std::process::{Command, Output};

fn aracert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aracert"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn construct_conic_counts() {
    let out = aracert(&["construct", "--kind", "conic", "--m", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("candidate generators (3):"), "{text}");
    assert!(text.contains("target generators (5):"), "{text}");
}

#[test]
fn construct_remark9_fermat() {
    let out = aracert(&["construct", "--kind", "remark9", "--n", "2", "--F", "fermat:3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("candidate generators (5):"), "{text}");
    assert!(text.contains("expected candidate count: 5"), "{text}");
}

#[test]
fn construct_diagonal_relative_count() {
    let out = aracert(&["construct", "--kind", "diagonal", "--n", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("expected candidate count: 3"), "{text}");
}

#[test]
fn construct_json_mode() {
    let out = aracert(&["construct", "--kind", "conic", "--m", "2", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["candidate"].as_array().unwrap().len(), 6);
    assert_eq!(v["case"]["kind"], "conic");
}

#[test]
fn construct_output_is_deterministic() {
    let args = ["construct", "--kind", "theorem45", "--n", "3", "--F", "x3^2 + x0*x1"];
    let a = aracert(&args);
    let b = aracert(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_conic_certifies_with_json_report() {
    let out = aracert(&["verify", "--kind", "conic", "--m", "1", "--oracle-primes", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["radical_equal"], serde_json::Value::Bool(true));
    assert_eq!(report["certified"], serde_json::Value::Bool(true));
    assert_eq!(report["zero_locus_checks"][0]["q"], 3);
}

#[test]
fn verify_malformed_curve_is_usage_error() {
    let out = aracert(&["verify", "--kind", "remark9", "--n", "2", "--F", "x0 +* x1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_unknown_kind_is_usage_error() {
    let out = aracert(&["verify", "--kind", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_broken_candidate_fails_with_exit_one() {
    let out = aracert(&[
        "verify",
        "--kind",
        "conic",
        "--m",
        "1",
        "--oracle-primes",
        "3",
        "--drop-candidate",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["radical_equal"], serde_json::Value::Bool(false));
    assert!(report["radical_witness"].is_string());
}

#[test]
fn verify_tiny_budget_exits_three() {
    let out = aracert(&[
        "verify",
        "--kind",
        "theorem45",
        "--n",
        "3",
        "--F",
        "x3^2 + x0*x1",
        "--oracle-primes",
        "2",
        "--budget",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["radical_equal"], "budget exceeded");
}

#[test]
fn budget_env_variable_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_aracert"))
        .args(["verify", "--kind", "conic", "--m", "1", "--oracle-primes", "3"])
        .env("ARACERT_BUDGET", "3")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn gb_reduces_simple_ideal() {
    let dir = std::env::temp_dir().join("aracert-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("simple.txt");
    std::fs::write(&file, "x0  # a generator\nx0 + x1\n").unwrap();
    let out = aracert(&["gb", file.to_str().unwrap(), "--vars", "x0,x1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "x0\nx1\n");
}

#[test]
fn gb_single_minor_is_its_own_basis() {
    let dir = std::env::temp_dir().join("aracert-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("minor.txt");
    std::fs::write(&file, "z00*z11 - z10*z01\n").unwrap();
    let out = aracert(&["gb", file.to_str().unwrap(), "--vars", "z00,z10,z01,z11"]);
    assert!(out.status.success());
    // Reduced bases are monic; the minor's grevlex leading coefficient is -1.
    assert_eq!(stdout(&out), "z10*z01 - z00*z11\n");
}

#[test]
fn flex_fermat_verdict() {
    let out = aracert(&[
        "flex",
        "--F",
        "fermat:3",
        "--line",
        "dual:x0 + x1",
        "--point=-1,1,0",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("d-flex: true"));
}

#[test]
fn flex_standardize_prints_form_and_matrix() {
    let out = aracert(&[
        "flex",
        "--F",
        "fermat:3",
        "--line",
        "1,-1,0;0,0,1",
        "--point=-1,1,0",
        "--standardize",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("standardized: x0^3 + x1^3 + 3*x0^2*x2 + 3*x0*x2^2"), "{text}");
    assert!(text.contains("T:"), "{text}");
}

#[test]
fn flex_secant_is_not_a_flex() {
    let out = aracert(&[
        "flex",
        "--F",
        "conic:standard",
        "--line",
        "dual:x1",
        "--point",
        "1,0,0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("d-flex: false"));
}

#[test]
fn flex_moduli_dim_output() {
    let out = aracert(&["flex", "--moduli-dim", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("dim V_4 = 5"), "{text}");
    assert!(text.contains("codim = 1"), "{text}");
}

#[test]
fn flex_search_over_f7() {
    let out = aracert(&["flex", "--F", "fermat:3", "--field", "Fp:7", "--search"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("d-flexes found:"), "{text}");
    assert!(!text.contains("d-flexes found: 0"), "{text}");
}
