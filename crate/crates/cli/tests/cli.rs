use std::process::{Command, Output};

use serde_json::Value;

fn octof4(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_octof4")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn schema() -> jsonschema::Validator {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../schemas/report.schema.json");
    let raw: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&raw).unwrap()
}

fn assert_valid(v: &Value) {
    let validator = schema();
    let errors: Vec<String> = validator.iter_errors(v).map(|e| format!("{e} at {}", e.instance_path)).collect();
    assert!(errors.is_empty(), "{errors:#?}");
}

#[test]
fn quick_verify_passes_and_matches_schema() {
    let o = octof4(&["verify", "--level", "quick"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["parameters"], serde_json::json!(["1/36", "0", "-1/12", "1/36", "0"]));
    assert_valid(&v);
}

#[test]
fn output_is_byte_identical_across_runs() {
    let a = octof4(&["verify", "--level", "quick", "--branch", "first"]);
    let b = octof4(&["verify", "--level", "quick", "--branch", "first"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn spectrum_table_depth_three() {
    let o = octof4(&["spectrum", "--depth", "3", "--format", "table"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<(String, usize)> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| {
            let mut it = l.split_whitespace();
            (it.next().unwrap().to_string(), it.next().unwrap().parse().unwrap())
        })
        .collect();
    let want = [("2/3", 7), ("5/3", 8), ("8/3", 8), ("11/3", 8)].map(|(e, d)| (e.to_string(), d));
    assert_eq!(rows, want);
}

#[test]
fn spectrum_json_shape() {
    let o = octof4(&["spectrum", "--depth", "1"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["levels"][0]["energy"], "2/3");
    assert_eq!(v["levels"][1]["degeneracy"], 8);
}

#[test]
fn usage_errors_exit_two() {
    let o = octof4(&["verify", "--branch", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bogus"));
    assert_eq!(octof4(&["verify", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(octof4(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(octof4(&["verify", "--level", "medium"]).status.code(), Some(2));
}

#[test]
fn numerics_single_component() {
    let o = octof4(&["numerics", "--component", "2", "--grid", "1000"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["coupling"], "-5/72");
    assert_eq!(v[0]["tower_exponent"], "1/6");
    let lowest = v[0]["tower"]["computed"][0].as_f64().unwrap();
    assert!((lowest - 2.0 / 3.0).abs() < 1e-3);
}

#[test]
fn numerics_rejects_small_grids() {
    let o = octof4(&["numerics", "--component", "1", "--grid", "50"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("100"));
}

#[test]
fn dumps_are_json_lines() {
    let t = stdout(&octof4(&["dump-tensors"]));
    let lines: Vec<Value> = t.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.iter().filter(|v| v["tensor"] == "C3").count(), 42);
    assert_eq!(lines.iter().filter(|v| v["tensor"] == "C4").count(), 168);
    let g = stdout(&octof4(&["dump-gammas"]));
    let mats: Vec<Value> = g.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(mats.len(), 16);
    assert_eq!(mats[15]["index"], 9);
    assert_eq!(mats[15]["matrix"][15][15], -1);
}

#[test]
fn lowest_weights_json() {
    let v: Value = serde_json::from_str(&stdout(&octof4(&["lowest-weights"]))).unwrap();
    assert_eq!(v[0][0]["beta"], "-7/6");
    assert_eq!(v[0][0]["norm"]["regularized_sign"], "negative");
    assert_eq!(v[3][11]["energy"], "5/3");
}

#[test]
fn report_file_matches_schema() {
    let path = std::env::temp_dir().join(format!("octof4-report-{}.json", std::process::id()));
    let o = octof4(&["report", "--level", "quick", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_valid(&v);
    assert_eq!(v["data"]["spectrum"]["levels"].as_array().unwrap().len(), 7);
}
