use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

fn ptri(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ptri")).args(args).output().expect("binary runs")
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("report is JSON")
}

#[test]
fn simplex_check_reports_chain() {
    let o = ptri(&["simplex-check", &data("simplex_b.json")]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    assert_eq!(r["is_simplex"], json!(true));
    assert_eq!(r["faces"], json!([[], [2], [1, 2]]));
}

#[test]
fn simplex_check_names_incomparable_facets() {
    let o = ptri(&["simplex-check", &data("quadrant.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(report(&o)["incomparable"], json!([[1], [2]]));
}

#[test]
fn malformed_input_exits_2() {
    let bad = scratch("bad.json");
    std::fs::write(&bad, "{\"q\": 2, \"levels\": [").unwrap();
    assert_eq!(ptri(&["simplex-check", bad.to_str().unwrap()]).status.code(), Some(2));
    let wrong = scratch("wrong.json");
    std::fs::write(&wrong, r#"{"q": 2, "levels": [{"support": true}]}"#).unwrap();
    assert_eq!(ptri(&["faces", wrong.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(ptri(&["faces", "/nonexistent/input.json"]).status.code(), Some(2));
}

#[test]
fn invalid_presentation_exits_1() {
    let path = scratch("invalid.json");
    let text = r#"{"q": 1, "levels": [{"support": true, "mu": {"coeffs": {"1": "1"}}, "nu": "+inf"}]}"#;
    std::fs::write(&path, text).unwrap();
    let o = ptri(&["validate-polytope", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(report(&o)["valid"], json!(false));
}

#[test]
fn reports_are_byte_identical() {
    for cmd in ["faces", "simplex-check", "oracle"] {
        let a = ptri(&[cmd, &data("simplex_b.json")]);
        let b = ptri(&[cmd, &data("simplex_b.json")]);
        assert_eq!(a.stdout, b.stdout, "{cmd}");
    }
    let args = ["oracle", &data("simplex_b.json"), "--samples", "5", "--depth", "3"];
    assert_eq!(ptri(&args).stdout, ptri(&args).stdout);
}

#[test]
fn complex_check_and_dot() {
    let dot = scratch("complex.dot");
    let out = scratch("complex.json");
    let o = ptri(&[
        "complex-check",
        &data("complex_b.json"),
        "--dot",
        dot.to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r["is_closed"], json!(true));
    let g = std::fs::read_to_string(&dot).unwrap();
    assert!(g.starts_with("digraph"));
    assert!(g.contains("label=\"Supp={2}\"") && g.contains("n1 -> n2;"));
}

#[test]
fn retract_projects_onto_target() {
    let o = ptri(&["retract", &data("complex_b.json")]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    assert_eq!(r["rules"][0][2], json!({"project": [2]}));
    assert_eq!(r["images"][0]["image"], json!([{"zero": true}, {"rat": "3"}]));
}

#[test]
fn dispatch_and_triangulate() {
    let o = ptri(&["dispatch", &data("monoplex_chain.json")]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    assert_eq!(r["H"], json!([[], [1], [1, 2]]));
    assert_eq!(r["P"], json!([[], [1], [1]]));
    let dot = scratch("lift.dot");
    let o = ptri(&["triangulate-cells", &data("monoplex_chain.json"), "--dot", dot.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    assert_eq!(r["simplexes"].as_array().unwrap().len(), 3);
    assert!(r["certificates"].as_array().unwrap().iter().all(|c| c["holds"] == json!(true)));
    assert!(std::fs::read_to_string(&dot).unwrap().contains("Supp={1,2}"));
}

#[test]
fn broken_monoplex_is_reported() {
    let text = std::fs::read_to_string(data("monoplex_chain.json")).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["tree"] = json!([[1, 0], [0, 2]]);
    let path = scratch("broken_monoplex.json");
    std::fs::write(&path, v.to_string()).unwrap();
    let o = ptri(&["dispatch", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(report(&o)["error"].as_str().unwrap().contains("faces-UA"));

    v["tree"] = json!([[0, 1], [0, 2]]);
    std::fs::write(&path, v.to_string()).unwrap();
    let o = ptri(&["triangulate-cells", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(report(&o)["violations"], json!(["cells 1 and 2 are comparable but unordered"]));
}

#[test]
fn good_direction_example() {
    let o = ptri(&["good-direction", &data("direction_xt.json")]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    assert_eq!(r["eta"], json!(["3"]));
    assert_eq!(r["leading"], json!(["3"]));
    let text = std::fs::read_to_string(data("direction_xt.json")).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["eta"] = json!(["0"]);
    let path = scratch("bad_direction.json");
    std::fs::write(&path, v.to_string()).unwrap();
    assert_eq!(ptri(&["good-direction", path.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn oracle_window_points() {
    let o = ptri(&["oracle", &data("simplex_b.json"), "--depth", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    assert_eq!(r["count"], json!(6));
    assert_eq!(r["points"][0], json!([0, 0]));
}
