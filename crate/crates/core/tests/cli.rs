use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gaugehull"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_prints_the_closed_form() {
    let o = run(&["eval", "--gauge", "dn:2", "--x", "1,0;0,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("1.144714"), "{}", stdout(&o));
}

#[test]
fn parse_errors_exit_with_usage_status() {
    assert_eq!(run(&["eval", "--gauge", "dn:2", "--x", "1,0"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--gauge", "dn:1", "--x", "1,0"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--x", "1,0"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let o = run(&["witness", "--n", "2", "--y", "1,0;2,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn certify_emits_a_positive_gap() {
    let o = run(&["certify", "--n", "2", "--y", "centroid"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["mode"], "certified");
    assert!(v["result"]["delta"].as_f64().unwrap() > 0.0);
    assert_eq!(v["result"]["gap_certificate"]["kind"], "mth-lower");
}

#[test]
fn verify_table_and_csv() {
    let o = run(&["verify", "--n", "2", "--samples", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("hull_lower"));
    let o = run(&["verify", "--n", "2", "--samples", "2", "--format", "csv"]);
    let text = stdout(&o);
    let header = text.lines().next().unwrap();
    assert_eq!(header, "row,v1,v2,v3,v4,hull_lower,hull_upper,distance,ok");
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let args = ["chain", "--gauge", "dn:2", "--x", "0.7,0.2;-0.3,0.5", "--m-max", "3", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["mode"], "heuristic");
    assert_eq!(v["result"]["chain"].as_array().unwrap().len(), 3);
}

#[test]
fn exhaust_csv_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let o = run(&[
        "exhaust", "--gauge", "pnorm:2:2", "--x", "1,0;0,0", "--j-list", "1,2,4", "--format", "csv",
        "--output", path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "j,value");
    let (j, value) = lines[1].split_once(',').unwrap();
    assert_eq!(j, "1");
    assert!((value.parse::<f64>().unwrap() - (5f64.sqrt() + 1.0) / 2.0).abs() < 1e-7);
    assert_eq!(lines.len(), 4);
}

#[test]
fn reduce_round_trips_a_decomposition() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("d.json");
    let atoms: Vec<Value> = (0..6)
        .map(|k| {
            let t = k as f64;
            serde_json::json!({"mode": "complex", "dim": 2, "coords": [0.1 + 0.1 * t, 0.05 * t, 0.2 - 0.03 * t, 0.01 * t * t]})
        })
        .collect();
    let mut target = [0.0; 4];
    for a in &atoms {
        for (i, c) in a["coords"].as_array().unwrap().iter().enumerate() {
            target[i] += c.as_f64().unwrap();
        }
    }
    let doc = serde_json::json!({
        "target": {"mode": "complex", "dim": 2, "coords": target},
        "atoms": atoms,
        "value": 0.0,
    });
    let g = gaugehull::gauges::parse_gauge("dn:2").unwrap();
    let d: gaugehull::decompose::Decomposition = serde_json::from_value(doc).unwrap();
    let d = gaugehull::decompose::Decomposition::new(&g, d.target, d.atoms).unwrap();
    std::fs::write(&input, serde_json::to_string(&d).unwrap()).unwrap();

    let o = run(&["reduce", "--gauge", "dn:2", "--input", input.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let reduced: gaugehull::decompose::Decomposition = serde_json::from_value(v["result"].clone()).unwrap();
    assert!(reduced.len() <= 4);
    assert!(reduced.value <= d.value * (1.0 + 1e-12));
    reduced.validate(&g).unwrap();
}

#[test]
fn hull_reports_a_tight_bracket() {
    let o = run(&["hull", "--gauge", "dn:2", "--x", "1,0;0,0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let up = v["result"]["bracket"]["upper"]["value"].as_f64().unwrap();
    let lo = v["result"]["bracket"]["lower"]["value"].as_f64().unwrap();
    assert!(lo <= 1.0 + 1e-12 && up >= 1.0 - 1e-12 && up - lo < 5e-3, "[{lo}, {up}]");
}
