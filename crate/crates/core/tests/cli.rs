//! End-to-end checks of the command-line interface: exit codes, formats,
//! reproducibility, and file handling.

use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tritower")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn present_gen_writes_p1() {
    let out = run(&["present", "gen", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("gens: x t"));
    assert!(text.contains("rel: txTxtXTXX"));
    assert!(text.contains("rel: T"));
}

#[test]
fn tri_gen_json_f_vector() {
    let out = run(&["tri", "gen", "boundary", "--dim", "4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["f_vector"], serde_json::json!([6, 15, 20, 15, 6]));
    assert_eq!(v["result"]["euler_characteristic"], 2);
    assert_eq!(v["config"]["dim"], 4);
}

#[test]
fn json_output_reproducible_byte_for_byte() {
    let args = ["present", "power-check", "--m", "1", "--format", "json"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);

    let dir = tempfile::tempdir().unwrap();
    let sphere = dir.path().join("s4.tri");
    let gen = run(&["tri", "gen", "boundary", "--dim", "4"]);
    fs::write(&sphere, gen.stdout).unwrap();
    let walk_args = [
        "tri", "walk", "--input", sphere.to_str().unwrap(),
        "--steps", "50", "--seed", "7", "--format", "json",
    ];
    let w1 = run(&walk_args);
    let w2 = run(&walk_args);
    assert_eq!(w1.status.code(), Some(0));
    assert_eq!(w1.stdout, w2.stdout);
}

#[test]
fn threads_do_not_change_results() {
    let base = run(&["present", "power-check", "--m", "2", "--format", "json"]);
    let multi = run(&["present", "power-check", "--m", "2", "--threads", "4", "--format", "json"]);
    let a: serde_json::Value = serde_json::from_str(&stdout(&base)).unwrap();
    let b: serde_json::Value = serde_json::from_str(&stdout(&multi)).unwrap();
    assert_eq!(a["result"], b["result"]);
}

#[test]
fn malformed_file_is_input_error_naming_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.pres");
    fs::write(&bad, "gens: x\nrel: q\n").unwrap();
    let out = run(&["present", "verify-trivial", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "stderr: {err}");
}

#[test]
fn capped_outcomes_exit_2() {
    // Coset cap too small for the (infinite) one-relator group.
    let dir = tempfile::tempdir().unwrap();
    let bg = dir.path().join("bg.pres");
    fs::write(&bg, "gens: x t\nrel: txTxtXTXX\n").unwrap();
    let out = run(&[
        "present", "verify-trivial", "--input", bg.to_str().unwrap(), "--max-cosets", "500",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // A filling search that cannot finish under a tiny length cap.
    let out = run(&["fill", "length", "--n", "1", "--loop", "x", "--max-len", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dehn_probe_finds_the_relator() {
    let out = run(&["dehn", "probe", "--word", "txTxtXTXX", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["applications"], 1);
}

#[test]
fn growth_emits_csv() {
    let out = run(&["fill", "growth", "--n-list", "1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,generator,fl_or_bound,states,capped"));
    assert_eq!(lines.clone().count(), 2, "one row per generator of P₁");
    assert!(lines.all(|l| l.starts_with("1,")));
}

#[test]
fn csv_rejected_where_not_tabular() {
    let out = run(&["present", "gen", "--n", "1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p2.pres");
    let out = run(&["present", "gen", "--n", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("gens: x t"));
    // The emitted file parses back in.
    let verify = run(&["present", "verify-trivial", "--input", path.to_str().unwrap()]);
    assert_eq!(verify.status.code(), Some(0));
}

#[test]
fn tower_eval_and_cmp() {
    let out = run(&["tower", "eval", "--m", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "65536");
    let out = run(&["tower", "cmp", "--a", "E(4)", "--b", "2^16"]);
    assert_eq!(stdout(&out).trim(), "E(4) = 2^16");
    let out = run(&["tower", "cmp", "--a", "E(10)", "--b", "2^2^E(9)"]);
    assert_eq!(stdout(&out).trim(), "E(10) < 2^2^E(9)");
}

#[test]
fn validate_reports_violations() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.tri");
    fs::write(&bad, "dim 2\n0 1 2\n0 1 3\n0 1 4\n").unwrap();
    let out = run(&["tri", "validate", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("ridge"));
    let good = dir.path().join("good.tri");
    let gen = run(&["tri", "gen", "boundary", "--dim", "2"]);
    fs::write(&good, gen.stdout).unwrap();
    let out = run(&["tri", "validate", "--input", good.to_str().unwrap(), "--level", "links"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn tri_apply_and_bfs_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.tri");
    let b = dir.path().join("b.tri");
    let gen = run(&["tri", "gen", "boundary", "--dim", "3"]);
    fs::write(&a, gen.stdout).unwrap();
    // Subdivide facet 0 1 2 3 with the fresh vertex 5.
    let applied = run(&[
        "tri", "apply", "--input", a.to_str().unwrap(), "--a", "0,1,2,3", "--b", "5",
    ]);
    assert_eq!(applied.status.code(), Some(0));
    fs::write(&b, applied.stdout).unwrap();
    let out = run(&["tri", "bfs", "--a", a.to_str().unwrap(), "--b", b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "distance: 1");
    // An illegal move is an input error.
    let bad = run(&["tri", "apply", "--input", a.to_str().unwrap(), "--a", "0,1", "--b", "2,3"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn env_var_overrides_default_cap() {
    let out = Command::new(env!("CARGO_BIN_EXE_tritower"))
        .args(["present", "verify-trivial", "--n", "1", "--format", "json"])
        .env("TRITOWER_MAX_COSETS", "777")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["config"]["max_cosets"], 777);
}
