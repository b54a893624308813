use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str], input: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diagcert")).args(args).arg("--input").arg(input).output().unwrap()
}

fn json(args: &[&str], input: &Path) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = run(&all, input);
    (out.status.code().unwrap(), serde_json::from_slice(&out.stdout).expect("stdout is JSON"))
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn smith_form_over_integers() {
    let out = run(&["snf"], &fixture("z_two_by_two.json"));
    assert_eq!(out.status.code(), Some(0));
    let (code, v) = json(&["snf"], &fixture("z_two_by_two.json"));
    assert_eq!(code, 0);
    assert_eq!(v["invariant_factors"], serde_json::json!(["2", "4"]));
}

#[test]
fn non_euclidean_snf_is_a_usage_error() {
    let out = run(&["snf"], &fixture("qxy_diagonal.json"));
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not Euclidean"));
}

#[test]
fn nilpotent_block_analysis() {
    let (code, v) = json(&["analyze"], &fixture("qxy_nilpotent_block.json"));
    assert_eq!(code, 0);
    assert_eq!(v["quasi_gorenstein"]["verdict"], "yes");
    assert_eq!(v["diagonalizable"]["verdict"], "no");
    let cands = v["diagonalizable"]["obstruction"]["candidates"].as_array().unwrap();
    assert_eq!(cands.len(), 2);
    assert_eq!(v["discrepancies"], serde_json::json!([]));
}

#[test]
fn exhausted_budget_is_undecided() {
    let out = run(&["diagonalize", "--steps", "1"], &fixture("qxy_nilpotent_block.json"));
    assert_eq!(out.status.code(), Some(4));
    assert!(stdout(&out).contains("unknown"));
}

#[test]
fn certificates_verify_and_tampering_is_caught() {
    let path = fixture("zx_upper_triangular_certificate.json");
    let out = run(&["verify"], &path);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "certificate: valid");

    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.matches("\"-6\"").count(), 1);
    let tampered = scratch("tampered_certificate.json", &text.replace("\"-6\"", "\"6\""));
    let (code, v) = json(&["verify"], &tampered);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "invalid");
    assert!(v["reason"].as_str().unwrap().contains("[2,2]"));
}

#[test]
fn output_is_deterministic() {
    for cmd in ["analyze", "qg", "diagonalize", "filtration"] {
        let path = fixture("zx_upper_triangular.json");
        let a = run(&[cmd, "--json"], &path);
        let b = run(&[cmd, "--json"], &path);
        assert_eq!(a.stdout, b.stdout, "{cmd}");
    }
}

#[test]
fn koszul_module_filtration() {
    let (code, v) = json(&["filtration"], &fixture("qxy_koszul.json"));
    assert_eq!(code, 0);
    assert_eq!(v["outcome"]["verdict"], "found");
    assert_eq!(v["outcome"]["chain"].as_array().unwrap().len(), 1);
}

#[test]
fn parse_errors_carry_positions() {
    let bad = scratch(
        "bad_entry.json",
        r#"{"schema":"diagcert/1","ring":{"kind":"polynomial","coefficients":"integers","variables":["x"]},"matrix":[["2","x+"],["0","3"]]}"#,
    );
    let out = run(&["analyze"], &bad);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("matrix[0][1]"));

    let unknown = scratch(
        "unknown_field.json",
        r#"{"schema":"diagcert/1","ring":{"kind":"integers"},"matrix":[["1"]],"extra":1}"#,
    );
    assert_eq!(run(&["snf"], &unknown).status.code(), Some(1));
    assert_eq!(run(&["snf"], Path::new("/nonexistent/input.json")).status.code(), Some(1));
}

#[test]
fn singular_input_is_reported_not_failed() {
    let singular = scratch(
        "singular.json",
        r#"{"schema":"diagcert/1","ring":{"kind":"polynomial","coefficients":"rationals","variables":["x","y"]},"matrix":[["x","x"],["y","y"]]}"#,
    );
    let (code, v) = json(&["analyze"], &singular);
    assert_eq!(code, 0);
    assert_eq!(v["full_rank"], false);
    assert_eq!(run(&["diagonalize"], &singular).status.code(), Some(1));
}
