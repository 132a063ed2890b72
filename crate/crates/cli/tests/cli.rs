use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_green-etale"))
}

fn config(text: &str) -> NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".toml").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const AS: &str = "[field]\np = 2\n[extension]\nkind = \"artin_schreier\"\na = 1\n";

#[test]
fn check_etale_positive_verdict_exits_zero() {
    let c = config(AS);
    let o = run(&["check-etale", c.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("  I: dim 1, generators: 1⊗1 + [α⊗α]\n"));
    assert!(s.ends_with("verdict: Green-étale: yes\n"));
}

#[test]
fn negative_verdict_exits_one() {
    let c = config("[field]\np = 3\n[extension]\nkind = \"constant\"\nn = 2\nalgebra_modulus = [0, 0, 1]\n");
    let o = run(&["check-etale", c.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("verdict: Green-étale: no"));
}

#[test]
fn invalid_input_exits_two() {
    let bad_param = config("[field]\np = 5\n[extension]\nkind = \"kummer\"\nn = 2\na = 4\nzeta = 4\n");
    let o = run(&["check-etale", bad_param.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("reducible"));

    let bad_syntax = config("[field]\np = \n");
    assert_eq!(run(&["box", bad_syntax.path().to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["decompose", "/no/such/file.toml"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn report_round_trips_through_json() {
    let c = config(AS);
    let json = stdout(&run(&["report", "--format", "json", c.path().to_str().unwrap()]));
    let mut f = tempfile::Builder::new().suffix(".json").tempfile().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    let again = run(&["report", "--format", "json", f.path().to_str().unwrap()]);
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(stdout(&again), json);
    let text = stdout(&run(&["report", "--format", "text", f.path().to_str().unwrap()]));
    assert_eq!(text, stdout(&run(&["check-etale", c.path().to_str().unwrap()])));
}

#[test]
fn fuzz_replays_and_detects_corruption() {
    let c = config("[field]\np = 5\n[extension]\nkind = \"kummer\"\nn = 4\na = 2\nzeta = 2\n");
    let p = c.path().to_str().unwrap();
    let a = run(&["fuzz", "--seed", "9", "--count", "20", "--format", "json", p]);
    let b = run(&["fuzz", "--seed", "9", "--count", "20", "--format", "json", p]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let s = stdout(&run(&["fuzz", "--seed", "9", "--count", "20", "--corrupt", p]));
    assert!(s.contains("corruptions detected: 40/40"), "{s}");
}

#[test]
fn box_and_decompose_verbs() {
    let c = config("[field]\np = 5\n[extension]\nkind = \"kummer\"\nn = 4\na = 2\nzeta = 2\n");
    let p = c.path().to_str().unwrap();
    let o = run(&["box", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("level 4: dim 4 (ambient 21, relation rank 17)"));
    let o = run(&["decompose", "--format", "json", p]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["decomposition"]["dims"], serde_json::json!([[1, 1, 1], [1, 0, 0], [1, 1, 0], [1, 0, 0]]));
    assert_eq!(v["certificate"]["kind"], "eigen_free");
}
