use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn orbitq(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_orbitq"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn orbitq");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn json_out(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn temp_file(name: &str, text: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("orbitq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn eval_reads_stdin() {
    let out = orbitq(
        &["eval", "-"],
        Some(r#"{"field":"R","n":1,"k":2,"A":[[0]],"B":[[1,0]]}"#),
    );
    let v = json_out(&out);
    assert_eq!(v["v"], serde_json::json!([0.5, 0.0]));
    assert!(v.get("nu").is_none());
}

#[test]
fn eval_k1_reports_nu() {
    let out = orbitq(
        &["eval", "-"],
        Some(r#"{"field":"R","n":2,"k":1,"A":[[2,0],[0,1]],"B":[[0],[0]]}"#),
    );
    let v = json_out(&out);
    assert_eq!(v["v"].as_array().unwrap().len(), 2);
    assert_eq!(v["nu"], serde_json::json!([0.0, 0.0]));
}

#[test]
fn base_cases() {
    let v = json_out(&orbitq(
        &["eval", "-"],
        Some(r#"{"field":"R","n":1,"k":1,"A":[[0]],"B":[[3.0]]}"#),
    ));
    assert_eq!(v, serde_json::json!({"v": [], "nu": [3.0, 0.0]}));
    let v = json_out(&orbitq(
        &["eval", "-", "--k", "2"],
        Some(r#"{"field":"C","n":0,"k":2,"A":[],"B":[]}"#),
    ));
    assert_eq!(v, serde_json::json!({"v": []}));
    let v = json_out(&orbitq(&["dims", "--field", "R", "--n", "1", "--k", "1"], None));
    assert_eq!(v, serde_json::json!({"dim_V": 0, "has_nu": true}));
}

#[test]
fn shape_flags_must_match_the_file() {
    let point = r#"{"field":"R","n":1,"k":2,"A":[[0]],"B":[[1,0]]}"#;
    assert!(
        orbitq(&["eval", "-", "--field", "R", "--n", "1", "--k", "2"], Some(point))
            .status
            .success()
    );
    assert_eq!(orbitq(&["eval", "-", "--k", "1"], Some(point)).status.code(), Some(2));
    assert_eq!(
        orbitq(&["eval", "-", "--field", "C"], Some(point)).status.code(),
        Some(2)
    );
}

#[test]
fn orbit_check_identical_and_distinct() {
    let a = temp_file(
        "a.json",
        r#"{"field":"R","n":2,"k":2,"A":[[2,0],[0,1]],"B":[[1,0],[0,1]]}"#,
    );
    let b = temp_file(
        "b.json",
        r#"{"field":"R","n":2,"k":2,"A":[[3,0],[0,1]],"B":[[1,0],[0,1]]}"#,
    );
    let v = json_out(&orbitq(
        &["orbit-check", a.to_str().unwrap(), a.to_str().unwrap()],
        None,
    ));
    assert_eq!(v["same_orbit"], true);
    assert_eq!(v["distance"], 0.0);
    let v = json_out(&orbitq(
        &["orbit-check", a.to_str().unwrap(), b.to_str().unwrap()],
        None,
    ));
    assert_eq!(v["same_orbit"], false);
    assert!(v["certificates"]["spectrum"].as_f64().unwrap() > 0.5);
}

#[test]
fn sampled_groups_are_unitary() {
    for what in ["group", "special-group"] {
        let out = orbitq(&["sample", what, "--field", "C", "--n", "4", "--seed", "8"], None);
        let g = orbitq::io::parse_group(&String::from_utf8(out.stdout).unwrap()).unwrap();
        assert!(g.matrix().unitarity_defect() < 1e-12);
    }
}

#[test]
fn output_is_deterministic() {
    let args = [
        "sample", "point", "--field", "C", "--n", "5", "--k", "2", "--seed", "11",
    ];
    assert_eq!(orbitq(&args, None).stdout, orbitq(&args, None).stdout);
}

#[test]
fn dims() {
    let v = json_out(&orbitq(&["dims", "--field", "C", "--n", "3", "--k", "2"], None));
    assert_eq!(v["dim_V"], 11);
    assert_eq!(v["has_nu"], false);
    let v = json_out(&orbitq(&["dims", "--field", "R", "--n", "4", "--k", "1"], None));
    assert_eq!(v["dim_V"], 6);
    assert_eq!(v["has_nu"], true);
}

#[test]
fn bad_input_exits_with_2() {
    let out = orbitq(&["eval", "-"], Some("{"));
    assert_eq!(out.status.code(), Some(2));
    let out = orbitq(&["eval", "-"], Some(r#"{"field":"R","n":2,"k":1,"A":[[0]],"B":[[1]]}"#));
    assert_eq!(out.status.code(), Some(2));
    let out = orbitq(&["dims", "--field", "R", "--n", "0", "--k", "1"], None);
    assert_eq!(out.status.code(), Some(2));
    let out = orbitq(&["verify", "--suite", "nope"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sample_act_and_orbit_check() {
    let point = orbitq(
        &["sample", "point", "--field", "C", "--n", "3", "--k", "1", "--seed", "4"],
        None,
    );
    let point_text = String::from_utf8(point.stdout).unwrap();
    let special = orbitq(
        &["sample", "special-group", "--field", "C", "--n", "3", "--seed", "5"],
        None,
    );
    let group_text = String::from_utf8(special.stdout).unwrap();

    let p = temp_file("p.json", &point_text);
    let g = temp_file("g.json", &group_text);
    let moved = orbitq(&["act", g.to_str().unwrap(), p.to_str().unwrap()], None);
    let q = temp_file("q.json", &String::from_utf8(moved.stdout).unwrap());

    let verdict = json_out(&orbitq(
        &[
            "orbit-check",
            p.to_str().unwrap(),
            q.to_str().unwrap(),
            "--tol",
            "1e-7",
            "--align",
            "50",
        ],
        None,
    ));
    assert_eq!(verdict["same_orbit"], true);
    assert!(verdict["certificates"]["signature"].as_f64().unwrap() < 1e-7);
    assert!(verdict["certificates"]["alignment"].as_f64().unwrap() < 1e-6);

    // a unitary with det ≠ 1 moves nu, so the SO-orbit changes
    let other = orbitq(&["sample", "group", "--field", "C", "--n", "3", "--seed", "6"], None);
    let g2 = temp_file("g2.json", &String::from_utf8(other.stdout).unwrap());
    let moved = orbitq(&["act", g2.to_str().unwrap(), p.to_str().unwrap()], None);
    let r = temp_file("r.json", &String::from_utf8(moved.stdout).unwrap());
    let verdict = json_out(&orbitq(
        &["orbit-check", p.to_str().unwrap(), r.to_str().unwrap()],
        None,
    ));
    assert_eq!(verdict["same_orbit"], false);
}

#[test]
fn verify_summary_and_json() {
    let out = orbitq(
        &["verify", "--suite", "orbit-invariance", "--trials", "5", "--seed", "3"],
        None,
    );
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().all(|l| l.starts_with("[PASS]")));

    let out = orbitq(
        &[
            "verify",
            "--suite",
            "layout",
            "--trials",
            "2",
            "--field",
            "R",
            "--k",
            "2",
            "--json",
            "--sequential",
        ],
        None,
    );
    let report = json_out(&out);
    assert_eq!(report["suite"], "layout");
    assert_eq!(report["passed"], true);
    assert!(report["cases"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["k"] == 2 && c["field"] == "R"));
}
