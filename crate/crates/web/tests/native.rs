use nucleus_web::{analyze_json, nucleus_json, pmain_js, pmain_json};

#[test]
fn analyze_c22() {
    let v = analyze_json("C", 2, 2, 0).unwrap();
    assert_eq!(v["theta_star"], serde_json::json!(["9", "3/2", "-9/4"]));
}

#[test]
fn nucleus_c32() {
    let v = nucleus_json("C", 3, 2, 0).unwrap();
    assert_eq!(v["dim"], 16);
    assert_eq!(v["mult"], serde_json::json!([1, 6]));
    assert_eq!(v["passed"], true);
}

#[test]
fn pmain_b23() {
    let v = pmain_json("B", 2, 3, 0).unwrap();
    assert_eq!(v["counts"], serde_json::json!([1, 4, 1]));
    assert_eq!(v["M"][1][5], "9");
    assert_eq!(v["M"][5][5], "8");
}

#[test]
fn rejects_bad_input() {
    assert!(analyze_json("E", 2, 2, 0).is_err());
    assert!(pmain_js("C", 3, 3, 0)
        .unwrap_err()
        .contains("1120 vertices"));
    assert!(nucleus_json("hypercube", 2, 0, 0).is_ok());
}
