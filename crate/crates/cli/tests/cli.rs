use std::process::{Command, Output};

use serde_json::Value;

fn rivage(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rivage"))
        .args(args)
        .env_remove("RIVAGE_PRECISION_MAX")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = rivage(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn narrow_class_group_of_12() {
    let v = json(&["narrowclassgroup", "--d", "12"]);
    assert_eq!(v["d"], 12);
    assert_eq!(v["h_plus"], 2);
    assert_eq!(v["invariant_factors"], serde_json::json!([2]));
    assert_eq!(v["schema_version"], 1);
    let text = String::from_utf8(rivage(&["narrowclassgroup", "--d", "12"]).stdout).unwrap();
    let keys: Vec<usize> = ["\"d\"", "\"h_plus\"", "\"invariant_factors\""].iter().map(|k| text.find(k).unwrap()).collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]), "keys out of order");
}

#[test]
fn geodesic_picture_for_8() {
    let dir = std::env::temp_dir().join(format!("rivage-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("d8.svg");
    let v = json(&["geodesics", "--d", "8", "--svg", path.to_str().unwrap()]);
    assert_eq!(v["count"], 1);
    assert_eq!(v["geodesics"][0]["repelling"], "−√2");
    assert_eq!(v["geodesics"][0]["attracting"], "√2");
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.contains("version=\"1.1\"") && svg.contains("width=\"800\"") && svg.contains("height=\"400\""));
    assert_eq!(svg.matches("<path class=").count(), 2);
    assert!(svg.contains(">√2</text>") && svg.contains(">−√2</text>"));
    json(&["geodesics", "--d", "8", "--svg", path.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), svg);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn reflex_of_two() {
    let v = json(&["reflex", "--m", "2"]);
    assert_eq!(v["degree"], 8);
    let names: Vec<&str> = v["generators"].as_array().unwrap().iter().map(|g| g["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["2^{1/4}", "i·2^{1/4}"]);
}

#[test]
fn other_commands() {
    let v = json(&["classgroup", "--d", "-23"]);
    assert_eq!(v["h"], 3);
    let v = json(&["classgroup", "--d", "316"]);
    assert_eq!(v["h"], 3);
    let v = json(&["rayclassgroup", "--d", "12", "--n", "4"]);
    assert!(v["order"].as_u64().unwrap() >= 2);
    let v = json(&["units", "--d", "5"]);
    assert_eq!((v["x"].as_str(), v["y"].as_str(), v["norm"].as_i64()), (Some("1"), Some("1"), Some(-1)));
    let v = json(&["cf", "--d", "2"]);
    assert_eq!(v["preperiod"], serde_json::json!([1]));
    assert_eq!(v["period"], serde_json::json!([2]));
    let v = json(&["special", "--d", "12"]);
    assert_eq!(v["count"], 2);
    let v = json(&["torsorcheck", "--d", "40", "--n", "3"]);
    assert_eq!(v["passed"], true);
    let v = json(&["fn", "--g", "1,2,3,8", "--g", "2,0,0,1"]);
    assert_eq!(v["nu"], "2");
    let v = json(&["shoredatum", "--k0", "1", "--k1", "1", "--z", "1,1", "--pair", "2,1"]);
    assert_eq!(v["nu"], "2");
    assert_eq!(v["membership"], "torus");
    let v = json(&["hilbert", "--d", "-4"]);
    assert_eq!(v["polynomial"], "X - 1728");
    let v = json(&["hilbert", "--d", "-3"]);
    assert_eq!(v["polynomial"], "X");
    let v = json(&["cmcheck", "--d", "-23", "--primes", "10"]);
    assert_eq!(v["passed"], true);
}

#[test]
fn range_mode_is_sorted_and_deterministic() {
    let a = rivage(&["narrowclassgroup", "--range", "2..200", "--fundamental"]);
    let b = rivage(&["narrowclassgroup", "--range", "2..200", "--fundamental"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    let ds: Vec<i64> = v["results"].as_array().unwrap().iter().map(|r| r["d"].as_i64().unwrap()).collect();
    assert!(ds.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(ds[..4], [5, 8, 12, 13]);
    let v = json(&["hilbert", "--range", "-40..0", "--fundamental"]);
    assert!(v["results"].as_array().unwrap().iter().all(|r| r["d"].as_i64().unwrap() < 0));
}

#[test]
fn exit_codes() {
    assert_eq!(rivage(&["narrowclassgroup", "--d", "7"]).status.code(), Some(2));
    assert_eq!(rivage(&["narrowclassgroup", "--range", "10..5"]).status.code(), Some(2));
    assert_eq!(rivage(&["hilbert", "--d", "-20000"]).status.code(), Some(2));
    assert_eq!(rivage(&["reflex", "--m", "4"]).status.code(), Some(2));
    assert_eq!(rivage(&["hilbert", "--d", "-3999", "--max-digits", "40"]).status.code(), Some(3));
    assert_eq!(rivage(&["units", "--d", "5", "--frobnicate"]).status.code(), Some(64));
    assert_eq!(rivage(&["nosuchcommand"]).status.code(), Some(64));
    assert_eq!(rivage(&["cmcheck", "--d", "-23", "--p", "5"]).status.code(), Some(1));
}

#[test]
fn acceptance_subcommand() {
    let v = json(&["acceptance", "--criterion", "6,2", "--seed", "7"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 2);
}
