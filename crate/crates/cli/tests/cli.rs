use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(format!("{name}.json"))
}

fn hsclass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hsclass")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn write_job(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hsclass-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn cubic_node_report() {
    let path = fixture("cubic_node");
    let out = hsclass(&["classgroup", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["class_group"]["invariant_factors"], serde_json::json!([3]));
    assert_eq!(report["generators"], serde_json::json!([["z", "x1"]]));
    assert_eq!(report["verification"]["passed"], true);
}

#[test]
fn factorial_example_passes_every_check() {
    let path = fixture("e8_factorial");
    let out = hsclass(&["classgroup", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["class_group"]["invariant_factors"], serde_json::json!([]));
    assert_eq!(report["verification"]["passed"], true);
}

#[test]
fn fermat_cubic_is_rejected() {
    let path = fixture("fermat_cubic");
    let out = hsclass(&["classgroup", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["error"]["code"], "GCD_VIOLATION");
    assert!(report["error"]["message"].as_str().unwrap().contains("Z^6"));
    assert!(report["class_group"].is_null());
}

#[test]
fn reports_are_byte_identical() {
    let path = fixture("double_x1x2x3");
    let a = hsclass(&["classgroup", path.to_str().unwrap()]);
    let b = hsclass(&["classgroup", path.to_str().unwrap()]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn text_rendering() {
    let path = fixture("cubic_node");
    let out = hsclass(&["classgroup", path.to_str().unwrap(), "--format", "text"]);
    let text = stdout(&out);
    assert!(text.contains("class group: Z/3"), "{text}");
    assert!(text.contains("(z, x1)"), "{text}");
}

#[test]
fn verify_prints_a_table() {
    let path = fixture("weighted_node");
    let out = hsclass(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("section ring"));
    assert!(text.contains("E_1 module = (z, h_1)"));
    assert!(text.lines().last().unwrap().ends_with("pass"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn hilbert_side_by_side() {
    let path = fixture("cubic_node");
    let out = hsclass(&["hilbert", path.to_str().unwrap(), "--depth", "12"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 14);
    assert!(!text.contains("MISMATCH"));
    // R = k[xy, x^3, y^3] graded so that deg z = 2, deg x_i = 3
    let row6: Vec<&str> = text.lines().nth(7).unwrap().split_whitespace().collect();
    assert_eq!(row6, ["6", "3", "3"]);
}

#[test]
fn factor_counts() {
    let out = hsclass(&["factors-count", "--c", "3", "--field", "Q"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "2");
    let out = hsclass(&["factors-count", "--c", "12", "--field", "closure(Q)"]);
    assert_eq!(stdout(&out).trim(), "12");
    let out = hsclass(&["factors-count", "--c", "6", "--field", "GF(3)"]);
    // (1 + t^2)^3, and t^2 + 1 stays irreducible mod 3
    assert_eq!(stdout(&out).trim(), "1 (with repeated factors)");
    let out = hsclass(&["factors-count", "--c", "3", "--field", "GF(4)"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bad_input_exits_with_one() {
    let unknown = write_job(
        "unknown.json",
        r#"{"schema_version": 1, "field": "Q", "n": 3, "variables": [], "colour": "red"}"#,
    );
    assert_eq!(hsclass(&["classgroup", unknown.to_str().unwrap()]).status.code(), Some(1));
    let syntax = write_job(
        "syntax.json",
        r#"{"schema_version": 1, "field": "Q", "n": 3,
            "variables": [{"name": "x1", "weight": 1}, {"name": "x2", "weight": 1}],
            "factors": ["x1", "x2^"]}"#,
    );
    let out = hsclass(&["classgroup", syntax.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["error"]["code"], "SYNTAX_ERROR");
    assert_eq!(hsclass(&["classgroup", "/nonexistent/job.json"]).status.code(), Some(1));
    assert_eq!(hsclass(&[]).status.code(), Some(1));
    assert_eq!(hsclass(&["hilbert"]).status.code(), Some(1));
}
