use std::process::Command;

fn cotangent(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cotangent"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn free_algebras_report_vanishing() {
    let (code, out) = cotangent(&["tmods", "corpus/free.json"]);
    assert_eq!(code, 0);
    assert!(out.contains("T0 = 3, T1 = 0, T2 = 0"), "{out}");
}

#[test]
fn dual_numbers_match_the_oracle() {
    let (code, out) = cotangent(&["exal", "corpus/dualnumbers.json", "--oracle"]);
    assert_eq!(code, 0);
    assert!(out.contains("MATCH") && !out.contains("MISMATCH"), "{out}");
}

#[test]
fn obstructed_lift_reports_a_class() {
    let (code, out) = cotangent(&["lift", "corpus/obstructed_lift.json", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["problems"][0]["result"]["verdict"], "Obstructed", "{out}");
}

#[test]
fn json_reports_are_reproducible() {
    let a = cotangent(&["deform", "corpus/deformations.json", "--json", "--oracle"]);
    let b = cotangent(&["deform", "corpus/deformations.json", "--json", "--oracle"]);
    assert_eq!(a, b);
}

#[test]
fn exit_codes() {
    assert_eq!(cotangent(&["tmods", "does/not/exist.json"]).0, 1);
    assert_eq!(cotangent(&["frobnicate"]).0, 1);
    assert_eq!(cotangent(&["--help"]).0, 0);
    assert_eq!(cotangent(&["exal", "corpus/fatpoint.json", "--oracle", "--budget", "3"]).0, 2);
}
