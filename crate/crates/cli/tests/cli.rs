use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn stabc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stabc"))
        .args(args)
        .env_remove("STABC_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn compute_c(file: &str) -> f64 {
    let o = stabc(&["compute", file]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    v["c_value"].as_f64().unwrap()
}

#[test]
fn compute_reference_states() {
    let dir = tempfile::tempdir().unwrap();
    let s = 1.0 / 3f64.sqrt();
    let t = write(dir.path(), "t.json", &format!(r#"{{"dim": 2, "kind": "bloch", "bloch": [{s}, {s}, {s}]}}"#));
    assert!((compute_c(&t) - 2.666667).abs() < 1e-6);

    let mut entries = Vec::new();
    for r in 0..4 {
        for c in 0..4 {
            entries.push(if r == c { "[0.25, 0]" } else { "[0, 0]" });
        }
    }
    let mm = write(
        dir.path(),
        "mm.json",
        &format!(r#"{{"dim": 4, "kind": "density", "matrix": [{}]}}"#, entries.join(",")),
    );
    assert!(compute_c(&mm).abs() < 1e-9);

    let b = write(dir.path(), "b.json", r#"{"dim": 2, "kind": "bloch", "bloch": [0.6, 0, 0.8]}"#);
    assert!((compute_c(&b) - 2.4608).abs() < 1e-9);
}

#[test]
fn compute_report_fields_and_tables() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "p.json", r#"{"dim": 3, "kind": "pure", "amplitudes": [[0, 0], [0.7071067811865476, 0], [-0.7071067811865476, 0]]}"#);
    let v: Value = serde_json::from_str(&stdout(&stabc(&["compute", &f]))).unwrap();
    assert!((v["c_value"].as_f64().unwrap() - 7.5).abs() < 1e-9);
    assert!((v["complementarity_sum"].as_f64().unwrap() - 9.0).abs() < 1e-8);
    assert!(v.get("i_table").is_none());

    let v: Value = serde_json::from_str(&stdout(&stabc(&["compute", &f, "--tables"]))).unwrap();
    assert_eq!(v["i_table"].as_array().unwrap().len(), 9);
    assert_eq!(v["j_table"].as_array().unwrap().len(), 9);

    let mixed = write(dir.path(), "m.json", r#"{"dim": 2, "kind": "mixture", "components": [
        {"weight": 0.5, "amplitudes": [[1, 0], [0, 0]]}, {"weight": 0.5, "amplitudes": [[0, 0], [1, 0]]}]}"#);
    let v: Value = serde_json::from_str(&stdout(&stabc(&["compute", &mixed]))).unwrap();
    assert!(v.get("complementarity_sum").is_none());
    assert!(v["c_value"].as_f64().unwrap().abs() < 1e-9);

    let csv = stdout(&stabc(&["compute", &f, "--format", "csv"]));
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "dim,c_value,c_via_definition,path_gap,purity,m4,sqrt_m4,complementarity_sum");
    assert!(lines.next().unwrap().starts_with("3,7.5,7.5,"));
}

#[test]
fn validation_failures_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad_trace = write(dir.path(), "bad.json", r#"{"dim": 2, "kind": "density", "matrix": [[1, 0], [0, 0], [0, 0], [1, 0]]}"#);
    let o = stabc(&["compute", &bad_trace]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("trace"));

    let bloch3 = write(dir.path(), "b3.json", r#"{"dim": 3, "kind": "bloch", "bloch": [0, 0, 1]}"#);
    assert_eq!(stabc(&["compute", &bloch3]).status.code(), Some(2));
    let garbage = write(dir.path(), "g.json", "not json");
    assert_eq!(stabc(&["compute", &garbage]).status.code(), Some(2));
    assert_eq!(stabc(&["compute", "/nonexistent/state.json"]).status.code(), Some(2));
    assert_eq!(stabc(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(stabc(&["verify", "prop1", "--d", "1"]).status.code(), Some(2));
    assert_eq!(stabc(&["sweep", "--d", "3", "--steps", "1"]).status.code(), Some(2));
    assert_eq!(stabc(&["extremal", "--d", "4"]).status.code(), Some(2));
    assert_eq!(stabc(&["sweep", "--d", "5", "--psi", "fiducial"]).status.code(), Some(2));
    assert_eq!(stabc(&["bogus"]).status.code(), Some(2));
}

#[test]
fn renormalization_warns() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "w.json", r#"{"dim": 2, "kind": "pure", "amplitudes": [[1.00001, 0], [0, 0]]}"#);
    let o = stabc(&["compute", &f]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("renormalized"));
}

#[test]
fn verify_prop1_and_convexity() {
    let o = stabc(&["verify", "prop1", "--d", "3", "--samples", "100"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("Prop1-dual-path-d3"));
    assert!(text.contains("0 failed"));

    let o = stabc(&["verify", "convexity", "--d", "3", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let by_name = |n: &str| v.as_array().unwrap().iter().find(|c| c["name"] == n).cloned().unwrap();
    assert!((by_name("Prop2d-counterexample-mixture-d3")["observed"].as_f64().unwrap() - 5.5609).abs() < 5e-4);
    assert!((by_name("Prop2d-counterexample-chord-d3")["observed"].as_f64().unwrap() - 5.5528).abs() < 5e-4);
    assert_eq!(by_name("Prop2d-counterexample-d3")["verdict"], "PASS");

    let o = stabc(&["verify", "convexity", "--d", "2", "--samples", "100000", "--format", "csv"]);
    assert!(o.status.success());
    let csv = stdout(&o);
    assert!(csv.starts_with("suite,check,observed,relation,bound,tolerance,verdict\n"));
    assert!(csv.contains("convexity,Prop2d-sampled-violations-d2,0,at_most,0,,PASS"));
}

#[test]
fn verify_all_passes() {
    let o = stabc(&["verify", "all"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn seeds_are_deterministic_and_env_is_overridden() {
    let args = ["verify", "prop2-bounds", "--d", "3", "--format", "json", "--seed", "7"];
    let a = stabc(&args);
    let b = stabc(&args);
    assert_eq!(a.stdout, b.stdout);
    let c = stabc(&["verify", "prop2-bounds", "--d", "3", "--format", "json", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);

    let run_env = |seed: &str, extra: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_stabc"))
            .args(["sample", "--d", "3"])
            .args(extra)
            .env("STABC_SEED", seed)
            .output()
            .unwrap()
            .stdout
    };
    let flag = stabc(&["sample", "--d", "3", "--seed", "11"]).stdout;
    assert_eq!(run_env("11", &[]), flag);
    assert_eq!(run_env("99", &["--seed", "11"]), flag);
    assert_ne!(run_env("99", &[]), flag);
}

#[test]
fn sweep_rows() {
    let o = stabc(&["sweep", "--family", "rho-p", "--d", "3", "--steps", "101"]);
    assert!(o.status.success());
    let csv = stdout(&o);
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "p,c_value,c_analytic,second_difference,m4,i_min,i_max,j_min,j_max");
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    assert_eq!(rows.len(), 101);
    let row = rows.iter().find(|r| r[0] == "0.95").unwrap();
    assert!((row[1].parse::<f64>().unwrap() - 5.5609).abs() < 5e-4);
    for r in &rows {
        let (c, a): (f64, f64) = (r[1].parse().unwrap(), r[2].parse().unwrap());
        assert!((c - a).abs() < 1e-8);
    }

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let o = stabc(&["sweep", "--d", "2", "--steps", "11", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 11);
    let c_at = |row: &str| row.split(',').nth(1).unwrap().parse::<f64>().unwrap();
    assert!(c_at(rows[0]).abs() < 1e-9);
    assert!((c_at(rows[10]) - 2.0).abs() < 1e-9);

    let o = stabc(&["sweep", "--d", "3", "--psi", "fiducial", "--steps", "5", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v[4]["c_value"].as_f64().unwrap() - 7.5).abs() < 1e-9);
}

#[test]
fn extremal_summaries() {
    let get = |d: &str| -> Value { serde_json::from_str(&stdout(&stabc(&["extremal", "--d", d]))).unwrap() };
    let v = get("2");
    assert_eq!(v["stabilizers"], 6);
    assert!((v["c_min_stabilizer"].as_f64().unwrap() - 2.0).abs() < 1e-9);
    assert!((v["fiducial"]["c_value"].as_f64().unwrap() - 8.0 / 3.0).abs() < 1e-9);
    assert!((v["bound_upper"].as_f64().unwrap() - 8.0 / 3.0).abs() < 1e-12);

    let v = get("3");
    assert_eq!(v["stabilizers"], 12);
    assert!((v["c_max_stabilizer"].as_f64().unwrap() - 6.0).abs() < 1e-9);
    assert!((v["fiducial"]["c_value"].as_f64().unwrap() - 7.5).abs() < 1e-9);

    let v = get("5");
    assert_eq!(v["stabilizers"], 30);
    assert!((v["c_min_stabilizer"].as_f64().unwrap() - 20.0).abs() < 1e-9);
    assert!((v["bound_upper"].as_f64().unwrap() - (25.0 - 10.0 / 6.0)).abs() < 1e-12);
    assert!(v.get("fiducial").is_none());
}

#[test]
fn sampled_files_load_back() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("states");
    for (kind, extra) in [("pure", None), ("mixed", Some("2"))] {
        let mut args = vec!["sample", "--d", "3", "--samples", "3", "--kind", kind, "--out", out.to_str().unwrap()];
        if let Some(r) = extra {
            args.extend(["--rank", r]);
        }
        assert!(stabc(&args).status.success());
        for i in 0..3 {
            let c = compute_c(out.join(format!("state-{i:04}.json")).to_str().unwrap());
            if kind == "pure" {
                assert!((6.0 - 1e-9..=7.5 + 1e-9).contains(&c));
            } else {
                assert!(c >= -1e-9);
            }
        }
    }
}
