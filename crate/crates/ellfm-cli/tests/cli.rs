//! End-to-end tests of the `ellfm` binary and its exit-code contract.

use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output, Stdio};

fn ellfm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ellfm")).args(args).output().expect("binary runs")
}

fn ellfm_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ellfm"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON output")
}

fn charge(r: &str, x: &str, s: &str, eta: &str, a: &str, pt: &str) -> String {
    format!(r#"{{"charge": {{"r": "{r}", "x": "{x}", "S": ["{s}"], "eta": ["{eta}"], "a": "{a}", "s": "{pt}"}}}}"#)
}

#[test]
fn model_list_is_exactly_the_three_models() {
    let o = ellfm(&["model", "list"]);
    assert_eq!(code(&o), 0);
    let mut names: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    names.sort();
    assert_eq!(names, ["deg12", "deg18", "deg8"]);
    let o = ellfm(&["model", "list", "--json"]);
    assert_eq!(json(&o), serde_json::json!(["deg8", "deg12", "deg18"]));
}

#[test]
fn model_show_reports_intersection_numbers() {
    let o = ellfm(&["model", "show", "deg18"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("E^3 = 9"));
    let o = ellfm(&["model", "show", "deg8"]);
    assert!(stdout(&o).contains("c2·E = 8"));
    let o = ellfm(&["model", "show", "deg12", "--json"]);
    let v = json(&o);
    assert_eq!(v["intersection_numbers"]["E^3"], "-8");
    assert_eq!(v["intersection_numbers"]["c2·E"], "4");
    assert_eq!(v["matrices"]["T"].as_array().unwrap().len(), 6);
}

#[test]
fn unknown_model_is_an_input_error() {
    let o = ellfm(&["model", "show", "deg10"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("deg10"));
}

#[test]
fn skyscraper_goes_to_the_fibre() {
    let o =
        ellfm(&["fm", "--model", "deg18", "--direction", "forward", "--charge", &charge("0", "0", "0", "0", "0", "1")]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let out = &v["output"];
    assert_eq!(
        (out["r"].as_str(), out["x"].as_str(), out["a"].as_str(), out["s"].as_str()),
        (Some("0"), Some("0"), Some("1"), Some("0"))
    );
}

#[test]
fn oracle_matches_for_assorted_inputs() {
    let inputs = [
        charge("1", "0", "0", "0", "0", "0"),
        charge("2", "-1/3", "5/2", "-7", "1/6", "4"),
        charge("-3/4", "2", "1", "1/5", "-2", "0"),
    ];
    for doc in &inputs {
        for direction in ["forward", "inverse"] {
            let o = ellfm(&[
                "fm",
                "--model",
                "p2",
                "--direction",
                direction,
                "--charge",
                doc,
                "--oracle",
                "--twisted-charge",
            ]);
            assert_eq!(code(&o), 0, "{}", stderr(&o));
            let v = json(&o);
            assert_eq!(v["oracle_match"], true);
            assert!(v["twisted_charge"]["output"].is_object());
        }
    }
}

#[test]
fn inline_geometry_from_standard_input() {
    let doc = r#"{
        "geometry": {"labels": ["f1", "f2"], "form": [["0", "1"], ["1", "0"]], "c1": ["2", "2"], "c2": "4"},
        "charge": {"r": "1", "x": "1/2", "S": ["1", "-1"], "eta": ["0", "3"], "a": "1/7", "s": "0"}
    }"#;
    let o = ellfm_stdin(&["fm", "--direction", "inverse", "--charge", "-", "--oracle"], doc);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(json(&o)["oracle_match"], true);
}

#[test]
fn charge_documents_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("charge.json");
    std::fs::write(&path, charge("0", "0", "0", "0", "1", "0")).unwrap();
    let o = ellfm(&["fm", "--model", "deg18", "--direction", "forward", "--charge", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    // The fibre goes to a point, up to the shift: ch = −pt.
    assert_eq!(json(&o)["output"]["s"], "-1");
}

#[test]
fn m_relations_on_request() {
    let ok = ellfm(&[
        "fm",
        "--model",
        "deg18",
        "--direction",
        "inverse",
        "--charge",
        &charge("2", "0", "1", "-3", "1/2", "5"),
        "--verify-m",
    ]);
    assert_eq!(code(&ok), 0, "{}", stderr(&ok));
    assert_eq!(json(&ok)["m_relations"]["checks"].as_array().unwrap().len(), 3);
    let bad = ellfm(&[
        "fm",
        "--model",
        "deg18",
        "--direction",
        "inverse",
        "--charge",
        &charge("2", "1", "1", "-3", "1/2", "5"),
        "--verify-m",
    ]);
    assert_eq!(code(&bad), 2);
    assert!(stderr(&bad).contains("fibrewise of degree 0"));
}

#[test]
fn malformed_documents_are_input_errors() {
    for doc in [
        "{",
        r#"{"charge": {"r": "1"}}"#,
        &charge("1.5", "0", "0", "0", "0", "0"),
        &charge("1", "0", "0", "0", "0", "1/0"),
    ] {
        let o = ellfm(&["fm", "--model", "deg18", "--direction", "forward", "--charge", doc]);
        assert_eq!(code(&o), 2, "{doc}");
    }
    let o = ellfm(&["fm", "--direction", "forward", "--charge", &charge("1", "0", "0", "0", "0", "0")]);
    assert_eq!(code(&o), 2);
    let o =
        ellfm(&["fm", "--model", "deg8", "--direction", "forward", "--charge", &charge("1", "0", "0", "0", "0", "0")]);
    assert_eq!(code(&o), 2);
    let o = ellfm(&["fm", "--model", "deg18", "--direction", "sideways", "--charge", "{}"]);
    assert_eq!(code(&o), 2);
}

fn suite<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["suites"].as_array().unwrap().iter().find(|s| s["suite"] == name).expect("suite present")
}

fn check<'a>(suite: &'a Value, name: &str) -> &'a Value {
    suite["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).expect("check present")
}

#[test]
fn verify_named_suites() {
    let o = ellfm(&["verify", "m-matrix"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["ok"], true);
    assert_eq!(check(suite(&v, "m-matrix"), "m-squared")["statement"], "M² = −1");

    let o = ellfm(&["verify", "deg18-factorization"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let rel = check(suite(&v, "deg18-factorization"), "deg18-rel");
    assert_eq!(rel["outcome"], "pass");
    assert!(rel["statement"].as_str().unwrap().contains("S_V = S_E·S_L⁶·S_I·S_E"));

    let o = ellfm(&["verify", "monodromy-derivation"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let s = suite(&v, "monodromy-derivation");
    for model in ["deg8", "deg12"] {
        let c = check(s, &format!("{model}-monodromy-convention"));
        assert_eq!(c["outcome"], "pass");
        assert_eq!(c["detail"], "common conventions: A");
    }
}

#[test]
fn verify_unknown_suite_is_an_input_error() {
    assert_eq!(code(&ellfm(&["verify", "everything"])), 2);
}

#[test]
fn verify_reports_a_perturbed_identity() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("models.toml");
    let text = ellfm::models::BUILTIN_REGISTRY;
    // Flip the sign of the first entry of M.
    let perturbed = text.replacen("M = [\n  [0, 1,", "M = [\n  [0, -1,", 1);
    assert_ne!(perturbed, text, "the registry layout changed");
    std::fs::write(&path, perturbed).unwrap();
    let o = ellfm(&["verify", "m-matrix", "--config", path.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("m-matrix/m-is-fibre-duality"));
    assert_eq!(json(&o)["ok"], false);
}

#[test]
fn bad_config_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.toml");
    std::fs::write(&path, "constants = 3").unwrap();
    assert_eq!(code(&ellfm(&["verify", "m-matrix", "--config", path.to_str().unwrap()])), 2);
    assert_eq!(code(&ellfm(&["model", "list", "--config", "/nonexistent/models.toml"])), 2);
}

#[test]
fn moduli_commands() {
    let o = ellfm(&["moduli", "--fmw", "2,1"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["bps"], serde_json::json!(["2", "0", "0", "0", "0", "-3"]));
    assert_eq!(v["dimension"], "11");
    let o = ellfm(&["moduli", "--model", "deg18", "--bps", "1,0,0,0,0,0"]);
    assert_eq!(json(&o)["dimension"], "1");
    let o = ellfm(&["moduli", "--bps", "2,0,0,7,0,-3"]);
    assert_eq!(json(&o)["dimension"], "11");
    for args in [
        &["moduli", "--bps", "1,1,0,0,0,0"][..],
        &["moduli", "--fmw", "3,1"],
        &["moduli", "--fmw", "2,2"],
        &["moduli", "--fmw", "2"],
        &["moduli", "--bps", "1,2,3"],
        &["moduli", "--model", "deg8", "--bps", "1,0,0,0,0,0"],
        &["moduli"],
    ] {
        assert_eq!(code(&ellfm(args)), 2, "{args:?}");
    }
}
