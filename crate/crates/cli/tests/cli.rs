use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperscheme"))
        .arg("--out")
        .arg(out)
        .args(args)
        .output()
        .expect("binary runs")
}

fn error_of(o: &Output) -> Value {
    let line = String::from_utf8_lossy(&o.stderr);
    serde_json::from_str(line.lines().last().expect("an error line")).expect("error line is JSON")
}

fn fixtures() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["fixtures"]);
    assert!(o.status.success());
    dir
}

fn number(v: &Value) -> f64 {
    match v {
        Value::String(s) => s.parse().unwrap(),
        other => other.as_f64().unwrap(),
    }
}

#[test]
fn pentagon_verifies() {
    let dir = fixtures();
    let path = dir.path().join("pentagon.json");
    let o = run(dir.path(), &["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("pentagon.verify.json")).unwrap()).unwrap();
    assert_eq!(report["passed"], Value::Bool(true));
}

#[test]
fn corrupted_relations_are_rejected() {
    let dir = fixtures();
    let mut scheme: Value = serde_json::from_slice(&std::fs::read(dir.path().join("pentagon.json")).unwrap()).unwrap();
    for r in scheme["relations"].as_array_mut().unwrap() {
        let pair = (r[0].as_str().unwrap().to_owned(), r[1].as_str().unwrap().to_owned());
        match (pair.0.as_str(), pair.1.as_str()) {
            ("0", "2") | ("2", "0") => r[2] = "1".into(),
            ("0", "1") | ("1", "0") => r[2] = "2".into(),
            _ => {}
        }
    }
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, scheme.to_string()).unwrap();
    let o = run(dir.path(), &["verify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_of(&o)["error"], "InconsistentIntersection");
}

#[test]
fn missing_file_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &["verify", dir.path().join("absent.json").to_str().unwrap()],
    );
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_of(&o)["error"], "ParseError");
}

#[test]
fn non_commutative_character_table() {
    let dir = fixtures();
    let path = dir.path().join("S3__e_.json");
    let o = run(dir.path(), &["chartable", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(error_of(&o)["error"], "NotCommutative");
}

#[test]
fn gab_parameter_out_of_range() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &["family", "gab", "--a", "1.5", "--b", "3", "linearization"],
    );
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(error_of(&o)["error"], "ParameterOutOfRange");
}

#[test]
fn cosh_window_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["family", "cosh", "--r", "1", "--window", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&std::fs::read(dir.path().join("cosh_1.window.json")).unwrap()).unwrap();
    assert_eq!(report["passed"], Value::Bool(true));
}

#[test]
fn cyclic_dual_table_is_a_permutation_tensor() {
    let dir = fixtures();
    let path = dir.path().join("Z4.json");
    let o = run(dir.path(), &["dualtable", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&std::fs::read(dir.path().join("Z4.dualtable.json")).unwrap()).unwrap();
    let products = report["products"].as_array().unwrap();
    assert_eq!(products.len(), 16);
    let mut targets = vec![Vec::new(); 4];
    for (i, p) in products.iter().enumerate() {
        let w: Vec<f64> = p["weights"].as_array().unwrap().iter().map(number).collect();
        let ones: Vec<usize> = (0..4).filter(|&k| (w[k] - 1.0).abs() < 1e-12).collect();
        assert_eq!(ones.len(), 1);
        assert!(w.iter().all(|v| v.abs() < 1e-12 || (v - 1.0).abs() < 1e-12));
        targets[i / 4].push(ones[0]);
    }
    for row in &mut targets {
        row.sort_unstable();
        assert_eq!(row, &[0, 1, 2, 3]);
    }
}

#[test]
fn gab_linearization_rows_are_probabilities() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &["family", "gab", "--a", "3", "--b", "3", "linearization", "--max", "4"],
    );
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("gab_3_3.linearization.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("m,n,k,g"));
    let mut totals = std::collections::BTreeMap::new();
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        let g: f64 = f[3].parse().unwrap();
        assert!(g >= 0.0, "{line}");
        *totals.entry((f[0].to_owned(), f[1].to_owned())).or_insert(0.0) += g;
    }
    assert_eq!(totals.len(), 25);
    assert!(totals.values().all(|t: &f64| (t - 1.0).abs() < 1e-12));
}
