use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hankel-dirichlet"));
    cmd.env_remove("HANKEL_MAX_BITS");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json_lines(out: &Output) -> Vec<Value> {
    stdout(out).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn write_series(dir: &Path, body: &str) -> String {
    let path = dir.join("series.json");
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn compute_exact_factorial_records() {
    let out = run(&["compute", "--series", "factorial_seq", "--n", "3..4", "--r", "0"]);
    assert_eq!(code(&out), 0);
    let recs = json_lines(&out);
    assert_eq!(recs.len(), 2);
    assert_eq!(recs[0].as_object().unwrap().len(), 8);
    assert!(stdout(&out).starts_with(r#"{"series":"factorial_seq","n":3,"r":0,"mid":"4","rad":"0","sign":"positive","engine":"exact","bits":0}"#));
    assert_eq!(recs[0]["mid"], "4");
    assert_eq!(recs[0]["rad"], "0");
    assert_eq!(recs[0]["engine"], "exact");
    assert_eq!(recs[1]["mid"], "144");
    assert_eq!(recs[1]["sign"], "positive");
}

#[test]
fn compute_zeta_ball_and_csv_header() {
    let out = run(&["compute", "--series", "zeta", "--n", "2", "--output", "csv"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("series,n,r,mid,rad,sign,engine,bits"));
    let row = lines.next().unwrap();
    assert!(row.starts_with("zeta,2,0,0.33540956"), "{row}");
    assert!(row.contains(",positive,lu,"));
}

#[test]
fn degenerate_series_exact_zero_and_ball_unresolved() {
    let out = run(&["compute", "--series", "geo2", "--n", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json_lines(&out)[0]["sign"], "exactly_zero");

    let out = bin().args(["compute", "--series", "geo2", "--n", "3", "--engine", "lu"]).env("HANKEL_MAX_BITS", "512").output().unwrap();
    assert_eq!(code(&out), 2);
    let rec = &json_lines(&out)[0];
    assert_eq!(rec["sign"], "zero_unresolved");
    assert!(rec["bits"].as_u64().unwrap() <= 512);
}

#[test]
fn exit_codes_for_bad_input() {
    assert_eq!(code(&run(&["compute", "--series", "nope", "--n", "2"])), 3);
    assert_eq!(code(&run(&["compute", "--series", "zeta"])), 64);
    assert_eq!(code(&run(&["compute", "--series", "zeta", "--n", "5..2"])), 64);
    assert_eq!(code(&run(&["compute", "--series", "zeta", "--n", "2", "--engine", "monien"])), 64);
    assert_eq!(code(&run(&["compute", "--series", "zeta", "--n", "2", "--precision", "lots"])), 64);
    let out = bin().args(["compute", "--series", "zeta", "--n", "2"]).env("HANKEL_MAX_BITS", "many").output().unwrap();
    assert_eq!(code(&out), 64);
}

#[test]
fn custom_series_file_and_out_path() {
    let dir = tempfile::tempdir().unwrap();
    let series = write_series(
        dir.path(),
        r#"{"name":"two_terms","coeffs":[[1,"1"],[3,"1/2"]],"s0":"0","tail_C":"0","tail_kappa":"0","support_finite":true}"#,
    );
    let out_path = dir.path().join("dets.jsonl");
    let out = run(&["compute", "--series", &series, "--n", "1..3", "--engine", "monien", "--out", out_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&out_path).unwrap();
    let recs: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(recs.len(), 3);
    assert_eq!(recs[0]["series"], "two_terms");
    assert_eq!(recs[1]["sign"], "positive");
    assert_eq!(recs[2]["sign"], "exactly_zero");

    let exact = run(&["compute", "--series", &series, "--n", "2", "--engine", "exact"]);
    assert_eq!(json_lines(&exact)[0]["mid"], recs[1]["mid"]);

    let bad = write_series(dir.path(), r#"{"name":"x","coeffs":[[1,"1"]],"s0":2,"tail_C":"1","tail_kappa":"0","support_finite":false}"#);
    assert_eq!(code(&run(&["compute", "--series", &bad, "--n", "2"])), 3);
    let unknown = write_series(dir.path(), r#"{"name":"x","coeffs":[],"s0":0,"tail_C":0,"tail_kappa":0,"support_finite":true,"extra":1}"#);
    assert_eq!(code(&run(&["compute", "--series", &unknown, "--n", "2"])), 3);
}

#[test]
fn decay_report_schema_and_exit_codes() {
    let out = run(&["verify", "decay", "--series", "zeta", "--epsilon", "0.1", "--n", "4..6"]);
    assert_eq!(code(&out), 0);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let text = stdout(&out);
    let pos: Vec<usize> = ["\"command\"", "\"series\"", "\"summary\"", "\"rows\"", "\"all_hard_checks_hold\""]
        .iter()
        .map(|k| text.find(k).unwrap())
        .collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(report["rows"].as_array().unwrap().len(), 3);
    assert_eq!(report["rows"][0]["kind"], "hard");
    assert!(report["rows"][0]["lhs"].as_str().unwrap().starts_with("-14.52836"));

    let out = run(&["verify", "decay", "--series", "zeta", "--epsilon", "0.1", "--n", "2"]);
    assert_eq!(code(&out), 1);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["all_hard_checks_hold"], false);
    assert_eq!(report["rows"][0]["status"], "fails");
}

#[test]
fn rationality_report_contents() {
    let out = run(&["verify", "rationality", "--series", "pow2", "--m", "16"]);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = report["rows"].as_array().unwrap();
    let row = |prefix: &str| rows.iter().find(|r| r["check"].as_str().unwrap().starts_with(prefix)).unwrap().clone();
    assert_eq!(row("D_4^2 H_2^(0)")["lhs"], "1280");
    assert_eq!(row("D_2 >")["holds"], false);
    assert_eq!(row("D_3 >")["holds"], true);
    assert_eq!(code(&out), 1);
    assert_eq!(code(&run(&["verify", "rationality", "--series", "zeta"])), 3);
}

#[test]
fn heuristic_reports_never_fail() {
    let out = run(&["verify", "asymptotics", "--n", "8..9"]);
    assert_eq!(code(&out), 0);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report["rows"].as_array().unwrap().iter().all(|r| r["kind"] == "heuristic"));
    assert_eq!(code(&run(&["verify", "ratio-limit", "--series", "zeta", "--s", "40"])), 0);
    assert_eq!(code(&run(&["verify", "envelope", "--series", "zeta", "--n", "2..4", "--r", "0..2"])), 0);
}

#[test]
fn selftest_is_deterministic() {
    let a = run(&["selftest", "--seed", "7"]);
    let b = run(&["selftest", "--seed", "7"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let report: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(report["status"], "ok");
    assert_eq!(report["seed"], 7);
}

#[test]
fn tampered_zeta_breaks_dodgson_identity() {
    let out = run(&["selftest", "--seed", "7", "--tamper-zeta"]);
    assert_eq!(code(&out), 1);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["status"], "fail");
    let catalog = report["suites"].as_array().unwrap().iter().find(|s| s["suite"] == "dodgson_catalog").unwrap();
    assert!(catalog["failed"].as_u64().unwrap() > 0);
    let random = report["suites"].as_array().unwrap().iter().find(|s| s["suite"] == "dodgson_random").unwrap();
    assert_eq!(random["failed"], 0);
}
