use std::path::PathBuf;
use std::process::{Command, Output};

fn proflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_proflow")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

#[test]
fn golden_files_match() {
    let o = proflow(&["tables", "golden", "--dir", golden_dir().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 5);
}

#[test]
fn table3_matches_golden_bytes() {
    let o = proflow(&["ff", "table", "--p", "5"]);
    assert!(o.status.success());
    let expected = std::fs::read_to_string(golden_dir().join("table3_p5.txt")).unwrap();
    assert_eq!(stdout(&o), expected);
    assert!(stdout(&o).lines().nth(6).unwrap().ends_with("1•1"));
}

#[test]
fn diagonal_csv_shape() {
    let o = proflow(&["tables", "diagonal", "--n", "4"]);
    assert_eq!(stdout(&o), "index,numerator,denominator\n1,1,1\n2,3,1\n3,3,1\n4,3,1\n");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(proflow(&["tables", "w", "--bogus"]).status.code(), Some(2));
    assert_eq!(proflow(&["ff", "table", "--p", "4"]).status.code(), Some(2));
    assert_eq!(proflow(&["ff", "table", "--p", "7"]).status.code(), Some(2));
    assert_eq!(proflow(&["plot", "sign-grid", "--range", "1,1"]).status.code(), Some(2));
}

#[test]
fn unwritable_output_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("missing").join("out.json");
    let o = proflow(&["identities", "run", "--all", "--report", target.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_report_is_deterministic_and_green() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let o = proflow(&["verify", "all", "--seed", "7", "--points", "100", "--report", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["seed"], 7);
    assert_eq!(json["schema_version"], 1);
    let entries = json["entries"].as_array().unwrap();
    assert!(!entries.is_empty());
    assert!(entries.iter().all(|e| e["pass"] == true));
}

#[test]
fn identities_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ids.json");
    let o = proflow(&["identities", "run", "--all", "--report", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(json["entries"].as_array().unwrap().len(), 6);
}

#[test]
fn vector_field_rows() {
    let o = proflow(&["plot", "vector-field", "--kind", "Lambda", "--n", "40"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("x,y,u,v"));
    assert_eq!(lines.count(), 1600);
}

#[test]
fn single_cell_sign_grid_with_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("g.svg");
    let o = proflow(&["plot", "sign-grid", "--n", "1", "--range", "0.01,0.02", "--svg", svg.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().collect::<Vec<_>>(), ["x,y,sign", "0.015,0.015,1"]);
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}

#[test]
fn orbit_csv() {
    let o = proflow(&["plot", "orbit", "--x", "0.3", "--y", "-0.2", "--t=-1,1", "--steps", "21"]);
    assert!(o.status.success());
    for line in stdout(&o).lines().skip(1) {
        let v: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
        assert!((v[1] * v[2] * (v[1] - v[2]) - 0.3 * -0.2 * 0.5).abs() < 1e-9);
    }
}

#[test]
fn special_function_evaluation() {
    let o = proflow(&["specialfn", "constants"]);
    assert!(stdout(&o).contains("pi3 = 5.299916250856"));
    let o = proflow(&["specialfn", "eval", "--fn", "sm", "--re", "0", "--im", "0"]);
    assert!(stdout(&o).starts_with("value = 0"), "{}", stdout(&o));
}
