use std::path::PathBuf;
use std::process::{Command, Output};

use padic_wavefront::geometry::ConicSetDescriptor;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_padic-wf"))
        .args(args)
        .current_dir(root())
        .env_remove("PADIC_WF_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(root().join("tests/golden").join(name)).expect("golden file")
}

fn check(args: &[&str], name: &str) {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden(name), "{args:?} drifted from {name}");
}

#[test]
fn bound_outputs() {
    check(&["bound", "tests/data/chart_inverse.toml"], "bound_chart_inverse.json");
    check(&["bound", "tests/data/y2_charts.toml"], "bound_y2_charts.json");
    check(&["bound", "tests/data/chart_2d.toml"], "bound_chart_2d.json");
}

#[test]
fn pcrit_outputs() {
    for c in ["parabola", "line", "point"] {
        check(&["pcrit", &format!("tests/data/{c}.toml")], &format!("pcrit_{c}.json"));
    }
}

#[test]
fn parabola_equation_is_the_discriminant() {
    let v: serde_json::Value = serde_json::from_str(&golden("pcrit_parabola.json")).unwrap();
    assert_eq!(v["equations"], serde_json::json!(["4*l0*l2 - l1^2"]));
    assert_eq!(v["method"], "exact");
}

#[test]
fn eval_outputs() {
    check(&["eval", "tests/data/monomial.toml", "--xi", "1/3", "--oracle-level", "3"], "eval_monomial.json");
    check(
        &["eval", "tests/data/y2_poly.toml", "--xi", "1/9", "--cube", "1@1", "--oracle-level", "3"],
        "eval_y2_poly.json",
    );
}

#[test]
fn probe_outputs() {
    check(&["probe", "tests/data/y2_poly.toml"], "probe_y2_poly.json");
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("probe.csv");
    let out = run(&["--out", csv.to_str().unwrap(), "probe", "tests/data/y2_poly.toml"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&csv).unwrap(), golden("probe_y2_poly.csv"));
}

#[test]
fn verify_outputs() {
    check(
        &["verify", "--suite", "homogeneity", "--seed", "1", "--trials", "20", "tests/data/monomial.toml"],
        "verify_homogeneity.json",
    );
    check(&["verify", "--suite", "cover", "tests/data/y2_poly.toml"], "verify_cover_y2_poly.json");
}

#[test]
fn descriptor_round_trips() {
    for name in ["bound_chart_inverse.json", "bound_y2_charts.json", "bound_chart_2d.json"] {
        let text = golden(name);
        let desc = ConicSetDescriptor::from_json(&text).unwrap();
        assert_eq!(desc.to_json() + "\n", text);
    }
}

#[test]
fn out_dir_default_name() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_padic-wf"))
        .args(["bound", "tests/data/y2_charts.toml"])
        .current_dir(root())
        .env("PADIC_WF_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let written = std::fs::read_to_string(dir.path().join("y2_charts.bound.json")).unwrap();
    assert_eq!(written, golden("bound_y2_charts.json"));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code();
    assert_eq!(code(&["probe", "tests/data/float_literal.toml"]), Some(2));
    assert_eq!(code(&["probe", "tests/data/unknown_key.toml"]), Some(2));
    assert_eq!(code(&["eval", "tests/data/monomial.toml"]), Some(2));
    assert_eq!(code(&["eval", "tests/data/monomial.toml", "--xi", "0.5"]), Some(2));
    assert_eq!(code(&["bound", "tests/data/parabola.toml"]), Some(2));
    // the truncated oracle's conductor outgrows max_level
    assert_eq!(code(&["eval", "tests/data/monomial.toml", "--xi", "1/3", "--oracle-level", "9"]), Some(3));
    assert_eq!(code(&["verify", "--suite", "cover", "tests/data/y2_poly_smooth_only.toml"]), Some(4));
}

#[test]
fn failing_suite_still_writes_its_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nested/report.json");
    let out = run(&["--out", path.to_str().unwrap(), "verify", "--suite", "cover", "tests/data/y2_poly_smooth_only.toml"]);
    assert_eq!(out.status.code(), Some(4));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["passed"], 2);
    assert_eq!(v["counterexample"]["probe_id"], 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}
