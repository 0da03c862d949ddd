use choosekit_web::{alpha_curve_json, classify_json, frontier_json, p_blocked_json};
use serde_json::Value;

#[test]
fn frontier_cells() {
    let v: Value = serde_json::from_str(&frontier_json(2, 2, 3, 5).unwrap()).unwrap();
    let cells = v["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 15);
    let at = |a: u64, b: u64| cells.iter().find(|c| c["deltaA"] == a && c["deltaB"] == b).unwrap();
    assert_eq!(at(2, 4)["verdict"], "Unchoosable");
    assert_eq!(at(2, 3)["verdict"], "Choosable");
    assert!(frontier_json(2, 2, 50, 5).is_err());
    assert!(frontier_json(0, 2, 3, 5).is_err());
}

#[test]
fn curve() {
    let v: Value = serde_json::from_str(&alpha_curve_json(4).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert!((v[0]["lo"].as_f64().unwrap() - 0.5 * 3f64.ln()).abs() < 1e-12);
    assert!(alpha_curve_json(1).is_err());
}

#[test]
fn classify_point_json() {
    let v: Value = serde_json::from_str(&classify_json(3, 9, 2, 1).unwrap()).unwrap();
    assert_eq!(v["verdict"], "Unchoosable");
    assert!(classify_json(0, 1, 1, 1).is_err());
}

#[test]
fn blocked() {
    let v: Value = serde_json::from_str(&p_blocked_json("").unwrap()).unwrap();
    assert_eq!(v["exact"], "83/315");
    assert_eq!(v["boundExact"], "1/3");
    assert_eq!(v["functional"], "4");
    let v: Value = serde_json::from_str(&p_blocked_json(r#"{"s":1,"t":1,"edges":[[0,0]]}"#).unwrap()).unwrap();
    assert_eq!(v["exact"], "1/2");
    assert!(p_blocked_json("{").is_err());
}
