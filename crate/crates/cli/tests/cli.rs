use serde_json::Value;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rss-tsallis")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(o: &Output) -> Vec<Vec<String>> {
    stdout(o).lines().map(|l| l.split(',').map(str::to_owned).collect()).collect()
}

#[test]
fn entropy_of_uniform_mrssu() {
    let o = run(&["entropy", "--model", "uniform:b=1", "--design", "mrssu", "--n", "2", "--alpha", "2"]);
    assert!(o.status.success());
    let rows = csv_rows(&o);
    assert_eq!(rows[0], ["alpha", "value", "method", "error_estimate", "status"]);
    assert_eq!(rows[1][1], "-0.333333333333");
}

#[test]
fn exponential_mrssu_gain() {
    let o = run(&["delta", "--model", "exp:theta=1", "--pair", "mrssu-srs", "--n", "2", "--alpha", "2"]);
    assert!(o.status.success());
    assert_eq!(csv_rows(&o)[1][1], "0.0833333333333");
}

#[test]
fn cumulative_and_residual_values() {
    let o = run(&["cumulative", "--model", "uniform:b=1", "--n", "2", "--alpha", "2"]);
    assert_eq!(csv_rows(&o)[1][2], "0.933333333333");
    let o = run(&["residual", "--model", "exp:theta=1", "--n", "2", "--alpha", "2", "--t", "0"]);
    assert_eq!(csv_rows(&o)[1][2], "0.833333333333");
}

#[test]
fn alpha_range_is_inclusive() {
    let o = run(&["entropy", "--model", "exp:theta=2", "--design", "srs", "--n", "3", "--alpha-range", "0.5:2.5:5"]);
    let alphas: Vec<String> = csv_rows(&o)[1..].iter().map(|r| r[0].clone()).collect();
    assert_eq!(alphas, ["0.5", "1", "1.5", "2", "2.5"]);
}

#[test]
fn json_carries_the_csv_numbers() {
    let args = ["entropy", "--model", "exp:theta=1", "--design", "rss", "--n", "2", "--alpha-range", "0.5:3:6"];
    let csv = csv_rows(&run(&args));
    let mut with_json = args.to_vec();
    with_json.extend(["--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&run(&with_json))).unwrap();
    let cols: Vec<&str> = v["columns"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(cols, csv[0].iter().map(String::as_str).collect::<Vec<_>>());
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), csv.len() - 1);
    for (j, r) in rows.iter().enumerate() {
        let from_csv: f64 = csv[j + 1][1].parse().unwrap();
        assert_eq!(r[1].as_f64().unwrap(), from_csv);
    }
}

#[test]
fn bounds_tables() {
    let o = run(&["bounds", "--model", "uniform:b=1", "--n", "3", "--alpha", "2"]);
    assert!(o.status.success());
    let rows = csv_rows(&o);
    assert!(rows[0].contains(&"stated_orientation".to_string()));
    let o = run(&["bounds", "--model", "uniform:b=1", "--n", "2", "--alpha", "0.5", "--t", "0.5", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 1);
}

#[test]
fn simulate_is_seeded() {
    let args = ["simulate", "--model", "uniform:b=1", "--design", "mrssu", "--n", "2", "--alpha", "2", "--reps", "2000", "--seed", "7"];
    let a = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, run(&args).stdout);
    let rows = csv_rows(&a);
    assert_eq!(rows.last().unwrap()[0], "design");
}

#[test]
fn out_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let args = ["entropy", "--model", "uniform:b=1", "--design", "srs", "--n", "2", "--alpha", "2"];
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    let o = run(&with_out);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), run(&args).stdout);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["entropy", "--model", "cauchy:x=1", "--design", "srs", "--n", "2", "--alpha", "2"]).status.code(), Some(2));
    assert_eq!(run(&["entropy", "--model", "uniform:b=1", "--design", "srs", "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["residual", "--model", "uniform:b=1", "--n", "2", "--alpha", "2"]).status.code(), Some(2));
    assert_eq!(run(&["entropy", "--model", "uniform:b=1", "--design", "srs", "--n", "0", "--alpha", "2"]).status.code(), Some(2));
}

#[test]
fn verify_reports_and_exits_by_outcome() {
    let pass = run(&["verify", "--suite", "bounds", "--model", "uniform:b=1", "--alpha-range", "2:3:2", "--n", "2"]);
    let summary = String::from_utf8(pass.stderr.clone()).unwrap();
    assert!(summary.contains("pass"), "{summary}");
    let code = pass.status.code().unwrap();
    let failing = csv_rows(&pass).iter().skip(1).any(|r| r[1] == "fail");
    assert_eq!(code, if failing { 1 } else { 0 });
    let full = run(&["verify", "--suite", "tsallis", "--alpha-range", "0.25:3:4", "--n", "3"]);
    assert_eq!(full.status.code(), Some(1));
}
