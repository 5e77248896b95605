//! The `divfree` binary: text output, exit codes, stdin, and golden JSON
//! reports. Regenerate the goldens with `UPDATE_GOLDEN=1`.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use divfree::cli::Report;

fn data(name: &str) -> String {
    format!("{}/examples/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_divfree"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// The report with its timing removed.
fn stable_json(o: &Output) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    v.as_object_mut().unwrap().remove("elapsed_ms");
    v
}

fn check_golden(name: &str, v: &serde_json::Value) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    let text = serde_json::to_string_pretty(v).unwrap() + "\n";
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &text).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
    assert_eq!(text, want, "golden {name} differs");
}

#[test]
fn charpoly_of_coord_braid() {
    let o = run(&["charpoly", &data("coord_braid4.arr")], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("chi(t) = (t-1)(t-2)(t-3)^2\n"));
}

#[test]
fn gen_pipes_into_charpoly() {
    let gen = run(&["gen", "weyl", "B", "3"], None);
    let o = run(&["charpoly", "-"], Some(&stdout(&gen)));
    assert!(stdout(&o).starts_with("chi(t) = (t-1)(t-3)(t-5)\n"));
    let o = run(&["charpoly", "-"], Some("dim 3\n"));
    assert!(stdout(&o).starts_with("chi(t) = t^3\n"));
}

#[test]
fn seeded_generation_is_reproducible() {
    let a = run(&["--seed", "11", "gen", "random", "4", "7"], None);
    let b = run(&["--seed", "11", "gen", "random", "4", "7"], None);
    let c = run(&["--seed", "12", "gen", "random", "4", "7"], None);
    assert_eq!(stdout(&a), stdout(&b));
    assert_ne!(stdout(&a), stdout(&c));
}

#[test]
fn coord_braid_certificate_golden() {
    let o = run(&["certify", "--json", "--scan-deletions", &data("coord_braid4.arr")], None);
    assert_eq!(o.status.code(), Some(0));
    let v = stable_json(&o);
    assert_eq!(v["results"]["verdict"]["exponents"], serde_json::json!([1, 2, 3, 3]));
    assert_eq!(v["results"]["deletions"][0]["verdict"]["verdict"], "NOT-FREE");
    assert_eq!(v["results"]["deletions"][0]["ziegler"]["rule"], "ziegler-cond1");
    check_golden("coord_braid4_certify.json", &v);
}

#[test]
fn d6_certificate_golden() {
    let gen = run(&["gen", "weyl", "D", "6"], None);
    let o = run(&["certify", "--json", "-"], Some(&stdout(&gen)));
    assert_eq!(o.status.code(), Some(0));
    let v = stable_json(&o);
    assert_eq!(v["results"]["verdict"]["exponents"], serde_json::json!([1, 3, 5, 5, 7, 9]));
    check_golden("d6_certify.json", &v);
}

#[test]
fn reports_round_trip() {
    let o = run(&["certify", "--json", &data("coord_braid4.arr")], None);
    let report: Report = serde_json::from_slice(&o.stdout).unwrap();
    let again: Report = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(report, again);
    assert_eq!(report.arrangement.unwrap().size, 9);
}

#[test]
fn thread_count_does_not_change_output() {
    let one = run(&["--threads", "1", "scan-conjecture", "--json", &data("coord_braid4.arr")], None);
    let four = run(&["--threads", "4", "scan-conjecture", "--json", &data("coord_braid4.arr")], None);
    assert_eq!(stable_json(&one), stable_json(&four));
}

#[test]
fn not_free_exits_with_two() {
    let o = run(&["certify", &data("generic5.arr")], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("NOT-FREE"));
}

#[test]
fn input_errors_exit_with_one() {
    let o = run(&["charpoly", "-"], Some("dim 2\n1 0\n1 2 3\n"));
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(run(&["certify", "/no/such/file.arr"], None).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"], None).status.code(), Some(1));
    assert_eq!(run(&["ziegler", "--hyperplane", "99", &data("coord_braid4.arr")], None).status.code(), Some(1));
}

#[test]
fn scan_conjecture_reports() {
    let gen = run(&["gen", "weyl", "A", "4"], None);
    let o = run(&["scan-conjecture", "-"], Some(&stdout(&gen)));
    let text = stdout(&o);
    assert!(text.contains("rank ≤ 3: no candidates possible"));
    assert!(text.contains("candidates: 0"));
    let o = run(&["scan-conjecture", &data("coord_braid4.arr")], None);
    assert!(stdout(&o).contains("candidates: 0"));
}

#[test]
fn ziegler_and_rank2exp() {
    let o = run(&["ziegler", &data("coord_braid4.arr")], None);
    assert!(stdout(&o).contains("total multiplicity 8"));
    assert!(stdout(&o).contains("multi b2 = 21"));
    let o = run(&["rank2exp", &data("a2_222.marr")], None);
    assert_eq!(stdout(&o), "(3, 3)\n");
}

#[test]
fn b1b2_table() {
    let o = run(&["b1b2", &data("coord_braid4.arr")], None);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 9);
    assert!(text.starts_with("x1: b2 = 29, b2(A^H) = 8, |A^H| = 5, slack = 1\n"));
}
