use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn dimlaw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dimlaw")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn emit(name: &str, dir: &Path) -> PathBuf {
    let out = dimlaw(&["examples", "--emit", name, "--dir", dir.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    PathBuf::from(stdout(&out).trim())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn solve_plain_latex_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let p = emit("market4", dir.path());
    let p = p.to_str().unwrap();

    let out = dimlaw(&["solve", p]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "G = const * sigma2^(1/2) * (Q/V)^(1/2)");

    let out = dimlaw(&["solve", p, "--format", "latex"]);
    assert!(stdout(&out).contains(r"\sqrt"));

    let out = dimlaw(&["solve", p, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["k"], 0);
    assert_eq!(v["y"], serde_json::json!(["1/2", "0", "-1/2", "1/2"]));
}

#[test]
fn render_specialization() {
    let dir = tempfile::tempdir().unwrap();
    let p = emit("market5c", dir.path());
    let out = dimlaw(&["render", p.to_str().unwrap(), "--power", "-1/6"]);
    assert_eq!(stdout(&out).trim(), "G = const * (sigma2 * C/(P * V))^(1/3)");

    let p4 = emit("market4", dir.path());
    let out = dimlaw(&["render", p4.to_str().unwrap(), "--power", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let p = emit("market5c", dir.path());
    let p = p.to_str().unwrap();
    let a = dimlaw(&["check", p, "--trials", "200", "--seed", "9"]);
    let b = dimlaw(&["check", p, "--trials", "200", "--seed", "9"]);
    assert_eq!(a.stdout, b.stdout);
    let a = dimlaw(&["generate", p, "--rows", "20", "--seed", "4"]);
    let b = dimlaw(&["generate", p, "--rows", "20", "--seed", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p = emit("pendulum4", dir.path());
    let p = p.to_str().unwrap();

    let out = dimlaw(&["check", p, "--trials", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["passed"], true);

    let out = dimlaw(&["check", p, "--trials", "100", "--perturb-y", "1"]);
    assert_eq!(out.status.code(), Some(3));

    let out = dimlaw(&["check", p, "--trials", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unattainable_target_exits_2_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "u.dim", "dimensions: L T\nquantity a : L\ntarget t : T\n");
    let out = dimlaw(&["solve", &p]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("witness: [0, 1]"));
}

#[test]
fn parse_errors_report_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "b.dim",
        "# header\ndimensions: L T\nquantity a : L * X\ntarget t : T\n",
    );
    let out = dimlaw(&["solve", &p]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));

    let out = dimlaw(&["solve", "/nonexistent/problem.dim"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn generate_then_fit_recovers_exponent() {
    let dir = tempfile::tempdir().unwrap();
    let p = emit("market5c", dir.path());
    let p = p.to_str().unwrap();
    let out = dimlaw(&["generate", p, "--rows", "100", "--power", "-0.1666", "--seed", "2"]);
    let csv = write(dir.path(), "d.csv", &stdout(&out));

    let out = dimlaw(&["fit", p, &csv]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["p_hat"].as_f64().unwrap() + 0.1666).abs() < 1e-9);

    let out = dimlaw(&["fit", p, &csv, "--mode", "const"]);
    assert_eq!(out.status.code(), Some(1));
    let out = dimlaw(&["fit", p, &csv, "--mode", "const", "--power", "-1/6"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["p_hat"].is_null());
}

#[test]
fn bad_csv_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = emit("market4", dir.path());
    let csv = write(dir.path(), "d.csv", "Q,P,V,sigma2,G\n1,1,1,-1,1\n");
    let out = dimlaw(&["fit", p.to_str().unwrap(), &csv, "--mode", "const"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("row 1"), "{}", stderr(&out));
}

#[test]
fn examples_list_and_verify_all() {
    let out = dimlaw(&["examples", "--list"]);
    let names: Vec<String> = stdout(&out).lines().map(String::from).collect();
    assert_eq!(names.len(), 7);
    assert!(names.contains(&"pendulum_silly".to_string()));

    let out = dimlaw(&["examples", "--verify-all"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v.as_array().unwrap().iter().all(|r| r["passed"] == true));
}

#[test]
fn usage_errors_exit_1_and_help_exits_0() {
    assert_eq!(dimlaw(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(dimlaw(&["examples"]).status.code(), Some(1));
    assert_eq!(dimlaw(&["--help"]).status.code(), Some(0));
    assert_eq!(dimlaw(&["--version"]).status.code(), Some(0));
}
