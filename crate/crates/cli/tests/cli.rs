use std::process::{Command, Output};

use serde_json::Value;

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nucleus-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn generate_is_deterministic() {
    let args = ["generate", "--family", "C", "--D", "2", "--q", "2"];
    let a = lab(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, lab(&args).stdout);
    assert_eq!(json(&a)["vertices"].as_array().unwrap().len(), 15);
    let cube = lab(&["generate", "--family", "hypercube", "--D", "3"]);
    assert_eq!(json(&cube)["vertices"].as_array().unwrap().len(), 8);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        lab(&["generate", "--family", "C", "--D", "2", "--q", "6"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        lab(&["generate", "--family", "C", "--D", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        lab(&[
            "analyze",
            "--family",
            "hypercube",
            "--D",
            "2",
            "--base-vertex",
            "9"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        lab(&[
            "verify",
            "--family",
            "hypercube",
            "--D",
            "2",
            "--only",
            "bogus"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        lab(&["analyze", "--input", "/nonexistent/graph.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(lab(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn path_graph_is_rejected_with_witness() {
    let dir = std::env::temp_dir().join(format!("nucleus-lab-p3-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("p3.json");
    std::fs::write(&path, r#"{"vertices":[0,1,2],"adjacency":[[0,1],[1,2]]}"#).unwrap();
    let out = lab(&["analyze", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("not distance-regular") && err.contains("vertices"),
        "{err}"
    );
}

#[test]
fn analyze_reports_spectrum_and_orderings() {
    let v = json(&lab(&["analyze", "--family", "C", "--D", "2", "--q", "2"]));
    assert_eq!(v["intersection_array"]["b"], serde_json::json!([6, 4]));
    assert_eq!(v["intersection_array"]["c"], serde_json::json!([1, 3]));
    let thetas: Vec<i64> = v["spectrum"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["theta"].as_i64().unwrap())
        .collect();
    assert_eq!(thetas, vec![6, 1, -3]);
    assert_eq!(v["theta_star"], serde_json::json!(["9", "3/2", "-9/4"]));
    let odd = json(&lab(&["analyze", "--family", "odd", "--D", "3"]));
    assert_eq!(odd["orderings"][0], serde_json::json!([4, -3, 2, -1]));
}

#[test]
fn nucleus_dimensions() {
    let c32 = json(&lab(&["nucleus", "--family", "C", "--D", "3", "--q", "2"]));
    assert_eq!(c32["nucleus"]["dim"], 16);
    assert_eq!(c32["nucleus"]["mult"], serde_json::json!([1, 6]));
    assert_eq!(c32["passed"], true);
    let cube = json(&lab(&["nucleus", "--family", "hypercube", "--D", "4"]));
    assert_eq!(cube["nucleus"]["dim"], 16);
    let ham = json(&lab(&[
        "nucleus", "--family", "hamming", "--D", "3", "--N", "3",
    ]));
    assert_eq!(ham["nucleus"]["dim"], 8);
}

#[test]
fn verify_exit_codes_and_filtering() {
    assert_eq!(
        lab(&["verify", "--family", "C", "--D", "2", "--q", "2"])
            .status
            .code(),
        Some(0)
    );
    let d22 = lab(&[
        "verify", "--family", "D", "--D", "2", "--q", "2", "--format", "json",
    ]);
    assert_eq!(d22.status.code(), Some(0));
    let v = json(&d22);
    let skipped: Vec<&str> = v["groups"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|g| g["checks"].as_array().unwrap())
        .filter(|c| c["status"] == "skipped")
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(
        skipped.contains(&"END") && skipped.contains(&"Pmain"),
        "{skipped:?}"
    );
    let only = json(&lab(&[
        "verify", "--family", "C", "--D", "3", "--q", "2", "--only", "pmain", "--format", "json",
    ]));
    let groups: Vec<&str> = only["groups"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["group"].as_str().unwrap())
        .collect();
    assert_eq!(groups, vec!["pmain"]);
    assert_eq!(only["passed"], true);
}

#[test]
fn poset_report() {
    let v = json(&lab(&["poset", "--family", "C", "--D", "2", "--q", "2"]));
    assert_eq!(v["poset"]["counts"], serde_json::json!([1, 3, 1]));
    assert_eq!(v["passed"], true);
    assert!(v["M"]["entries"].as_array().unwrap().len() > 5);
}
