use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fqzeta")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn index_pairs(record: &Value) -> Vec<(u64, u64)> {
    record["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (t["coeff"].as_u64().unwrap(), t["index"].as_u64().unwrap()))
        .collect()
}

#[test]
fn relation_19_20_by_partial_fractions() {
    let out = run(&["relation", "2", "19", "20", "--method", "initial"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("{(1,20),(1,16),(1,12),(1,8)}"));
    let out = run(&["relation", "2", "19", "20", "--method", "initial", "--json"]);
    let record: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(index_pairs(&record), vec![(1, 20), (1, 16), (1, 12), (1, 8)]);
    let keys: Vec<&str> = record.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys.len(), 9);
    assert!(stdout(&out).starts_with(r#"{"q":2,"p":2,"s":1,"a":19,"b":20,"weight":39,"method":"initial","terms":"#));
}

#[test]
fn diagonal_in_characteristic_two_is_empty() {
    let out = run(&["relation", "2", "5", "5"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("S(5,5) over F_2 [initial]: {}"));
}

#[test]
fn all_methods_agree_on_an_odd_diagonal() {
    let out = run(&["relation", "3", "4", "4", "--method", "all"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.ends_with("agree: true\n"), "{text}");
    assert_eq!(text.lines().count(), 5);
    let out = run(&["relation", "3", "4", "4", "--method", "all", "--json"]);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["agree"], Value::Bool(true));
    assert_eq!(report["records"].as_array().unwrap().len(), 4);
}

#[test]
fn all_includes_the_q2_formula_only_for_q2() {
    let out = run(&["relation", "2", "7", "3", "--method", "all"]);
    assert!(stdout(&out).contains("[closed-q2]"));
    let out = run(&["relation", "2", "7", "3", "--method", "closed-q2"]);
    assert_eq!(code(&out), 0);
    let out = run(&["relation", "5", "7", "3", "--method", "closed-q2"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn gt_prints_ascending_terms() {
    let out = run(&["gt", "9", "17"]);
    assert_eq!(stdout(&out), "1 + 2*t^72 + 2*t^80 + t^152\n");
    let out = run(&["gt", "2", "19"]);
    assert_eq!(stdout(&out).trim().split(" + ").count(), 8);
    let out = run(&["gt", "2", "16"]);
    assert_eq!(stdout(&out), "1\n");
    let out = run(&["gt", "9", "17", "--json"]);
    let g: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let exps: Vec<u64> = g["terms"].as_array().unwrap().iter().map(|t| t["exponent"].as_u64().unwrap()).collect();
    assert_eq!(exps, vec![0, 72, 80, 152]);
}

#[test]
fn verify_passes_and_reports() {
    let out = run(&["verify", "2", "19", "20", "--depths", "1,2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("depth 2: pass"));
    let out = run(&["verify", "3", "3", "2", "--depths", "1,2", "--zeta-precision", "40", "--json"]);
    assert_eq!(code(&out), 0);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["pass"], Value::Bool(true));
    assert_eq!(report["checks"].as_array().unwrap().len(), 3);
    let out = run(&["verify", "2", "4", "3", "--depths", "0"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn budget_and_argument_errors_exit_with_one() {
    let out = run(&["verify", "2", "10", "10", "--depths", "12", "--max-enum", "100"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
    for args in [
        &["relation", "6", "1", "1"][..],
        &["relation", "2", "0", "1"],
        &["relation", "2", "1"],
        &["gt", "2", "x"],
        &["relation", "2", "3", "1", "--method", "fast"],
        &["frobnicate"],
    ] {
        assert_eq!(code(&run(args)), 1, "{args:?}");
    }
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
}

#[test]
fn table_is_ordered_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let out = run(&["table", "2", "--amax", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let first = std::fs::read_to_string(&path).unwrap();
    let table: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(table["schema_version"], Value::from(1));
    let records = table["records"].as_array().unwrap();
    assert_eq!(records.len(), 10);
    let keys: Vec<(u64, u64)> = records.iter().map(|r| (r["a"].as_u64().unwrap(), r["b"].as_u64().unwrap())).collect();
    let mut sorted = keys.clone();
    sorted.sort_unstable();
    assert_eq!(keys, sorted);
    for r in records.iter().filter(|r| r["a"] == r["b"]) {
        assert!(r["terms"].as_array().unwrap().is_empty());
    }
    run(&["table", "2", "--amax", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), first);
}

#[test]
fn table_contains_the_twenty_nineteen_record() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let out = run(&["table", "2", "--amax", "21", "--bmax", "19", "--depths", "1,2", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let table: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let records = table["records"].as_array().unwrap();
    assert!(records.iter().all(|r| r["b"].as_u64().unwrap() <= 19));
    let record = records.iter().find(|r| r["a"] == 20 && r["b"] == 19).unwrap();
    assert_eq!(index_pairs(record), vec![(1, 20), (1, 16), (1, 12), (1, 8)]);
    assert_eq!(record["verified_depths"], serde_json::json!([1, 2]));
}

#[test]
fn table_reports_unwritable_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("t.json");
    assert_eq!(code(&run(&["table", "2", "--amax", "2", "--out", path.to_str().unwrap()])), 1);
}
