use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;

use polytropes_cli::{run_args, Outcome};
use serde_json::Value;

const HEXAGON: &str = "0 3 2; 3 0 4; 5 6 0";

fn run(args: &[&str]) -> Outcome {
    run_args(std::iter::once("polytropes").chain(args.iter().copied()))
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn representatives_3d() -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "data", "representatives_3d.txt"]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn hexagon_evaluations() {
    let out = run(&["polynomials", "hstar", "-m", HEXAGON, "--evaluate"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "1 49 29\n");
    assert!(out.stderr.is_empty());

    let out = run(&["polynomials", "volume", "-m", HEXAGON, "--evaluate"]);
    assert_eq!(out.stdout, "79 (normalized), 79/2 (euclidean)\n");
    let out = run(&["polynomials", "volume", "-m", HEXAGON, "--evaluate", "--euclidean"]);
    assert_eq!(out.stdout, "79/2\n");

    let out = run(&["polynomials", "ehrhart", "-m", HEXAGON, "--univariate"]);
    assert_eq!(out.stdout, "79/2*t^2 + 23/2*t + 1\n");
    let out = run(&["polynomials", "hstar", "-m", HEXAGON, "--univariate"]);
    assert_eq!(out.stdout, "29*t^2 + 49*t + 1\n");

    let out = run(&["polynomials", "ehrhart", "-m", HEXAGON, "--evaluate"]);
    assert_eq!(out.stdout, "52\n");
    let out = run(&["polynomials", "ehrhart", "-m", HEXAGON, "--evaluate", "--dilate", "2"]);
    assert_eq!(out.stdout, "182\n");
    // the volume of 2P is 4 * 79
    let out = run(&["polynomials", "volume", "-m", HEXAGON, "--evaluate", "--normalized", "--dilate", "2"]);
    assert_eq!(out.stdout, "316\n");
}

#[test]
fn json_matches_text() {
    let out = run(&["polynomials", "ehrhart", "-m", "[[0,3,2],[3,0,4],[5,6,0]]", "--univariate", "--format", "json"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["result"], serde_json::json!(["1", "23/2", "79/2"]));
    assert_eq!(v["tie_flag"], Value::Bool(false));

    let out = run(&["polynomials", "volume", "-m", "0 1; 1 0", "--format", "json"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(
        v["result"],
        serde_json::json!([
            {"exp": {"12": 1}, "coef": "1"},
            {"exp": {"21": 1}, "coef": "1"},
        ])
    );
}

#[test]
fn kleene_command() {
    let out = run(&["kleene", "-m", HEXAGON]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.ends_with("already a Kleene star\n"));

    // c12 = 100 shortcuts through vertex 3: 2 + 6
    let out = run(&["kleene", "-m", "0 100 2; 3 0 4; 5 6 0", "--format", "json"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["star"][0][1], 8);
    assert_eq!(v["already_kleene"], Value::Bool(false));

    let out = run(&["kleene", "-m", "0 -1; 0 0"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("negative cycle"), "{}", out.stderr);
}

#[test]
fn non_kleene_input_needs_star() {
    let m = "0 100 2; 3 0 4; 5 6 0";
    let out = run(&["polynomials", "volume", "-m", m, "--evaluate"]);
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("c_12"), "{}", out.stderr);
    let out = run(&["polynomials", "volume", "-m", m, "--evaluate", "--star", "--normalized"]);
    assert_eq!(out.code, 0);
    let star = run(&["polynomials", "volume", "-m", "0 8 2; 3 0 4; 5 6 0", "--evaluate", "--normalized"]);
    assert_eq!(out.stdout, star.stdout);
}

#[test]
fn tie_flag_is_a_warning() {
    // c_12 = c_13 + c_32: the triangle inequality is tight
    let m = "0 3 1; 1 0 1; 1 2 0";
    let out = run(&["polynomials", "volume", "-m", m, "--evaluate"]);
    assert_eq!(out.code, 0);
    assert!(out.stderr.starts_with("warning:"), "{}", out.stderr);
    assert_eq!(out.stdout, "11 (normalized), 11/2 (euclidean)\n");
    assert_eq!(run(&["verify", "-m", m]).code, 0);
}

#[test]
fn verify_hexagon() {
    let out = run(&["verify", "-m", HEXAGON, "--depth", "full"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.ends_with("PASS (6 checks)\n"));
    let out = run(&["verify", "-m", HEXAGON, "--threads", "3"]);
    assert!(out.stdout.ends_with("PASS (3 checks)\n"));
}

#[test]
fn verify_three_dimensional_example() {
    let out = run(&["verify", &fixture("example_3d.txt"), "--depth", "full"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("PASS coefficient correspondence"));
    assert!(out.stdout.contains("got -108, expected -108"));
}

#[test]
fn corrupted_volume_fixture_fails() {
    let out = run(&[
        "verify",
        &fixture("example_3d.txt"),
        "--volume",
        &fixture("corrupted_volume.json"),
        "--depth",
        "full",
    ]);
    assert_eq!(out.code, 1);
    let first_fail = out.stdout.lines().find(|l| l.starts_with("FAIL")).unwrap();
    assert_eq!(first_fail, "FAIL supplied volume polynomial: coefficient of a_13^3 is 2, recomputed 1");
    assert!(out.stderr.contains("a_13^3"));
}

#[test]
fn enumeration_cap() {
    let out = run(&["verify", "-m", HEXAGON, "--cap", "10"]);
    assert_eq!(out.code, 4);
    assert!(out.stderr.contains("cap"), "{}", out.stderr);
}

#[test]
fn malformed_input() {
    let out = run(&["polynomials", "volume", "-m", "0 1; 1"]);
    assert_eq!(out.code, 5);
    let out = run(&["polynomials", "volume", "/nonexistent/matrix.txt"]);
    assert_eq!(out.code, 5);
    let out = run(&["polynomials", "sideways", "-m", HEXAGON]);
    assert_eq!(out.code, 5);
    let out = run(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("polynomials"));
}

#[test]
fn batch_keeps_order_and_isolates_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("batch.txt");
    std::fs::write(&path, "0 3 2\n3 0 4\n5 6 0\n\n0 -1\n0 0\n\n# segment\n0 1\n1 0\n").unwrap();
    let path = path.to_str().unwrap();

    let out = run(&["batch", path]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.contains("record 2 (line 5)\n  error: negative cycle"));
    assert!(out.stdout.contains("record 3 (line 9)\n  volume: a_12 + a_21\n"));
    assert_eq!(out.stdout.matches("verify: PASS").count(), 2);

    let json = run(&["batch", path, "--format", "json", "--threads", "4"]);
    let v: Value = serde_json::from_str(&json.stdout).unwrap();
    let recs = v.as_array().unwrap();
    assert_eq!(recs.len(), 3);
    assert_eq!(recs[1]["exit_code"], 2);
    assert_eq!(recs[2]["hstar"][1][2]["coef"], "-1");
    assert_eq!(recs[0]["verify"]["passed"], Value::Bool(true));
}

#[test]
fn empty_batch() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.txt");
    std::fs::write(&path, "").unwrap();
    let out = run(&["batch", path.to_str().unwrap()]);
    assert_eq!(out, Outcome::default());
}

#[test]
fn bundled_representatives_are_distinct() {
    let out = run(&["batch", &representatives_3d(), "--format", "json", "--threads", "2"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    let recs = v.as_array().unwrap();
    assert_eq!(recs.len(), 6);
    let distinct: BTreeSet<String> = recs.iter().map(|r| r["volume"].to_string()).collect();
    assert_eq!(distinct.len(), 6);
    for r in recs {
        assert_eq!(r["verify"]["passed"], Value::Bool(true));
        assert_eq!(r["tie_flag"], Value::Bool(false));
    }

    // thread count does not change the output
    let single = run(&["batch", &representatives_3d(), "--format", "json", "--threads", "1"]);
    assert_eq!(single.stdout, out.stdout);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_polytropes");
    let ok = Command::new(bin)
        .args(["polynomials", "hstar", "-m", HEXAGON, "--evaluate"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "1 49 29\n");

    let neg = Command::new(bin).args(["kleene", "-m", "0 -3; 1 0"]).output().unwrap();
    assert_eq!(neg.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&neg.stderr).contains("negative cycle"));
}
