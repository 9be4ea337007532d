use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_compatlie"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compatible_pair_exits_zero() {
    let p = corpus("lr7.json");
    let o = run(&["check", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[yes] mixed Jacobi identity holds"));
}

#[test]
fn failed_identity_exits_one_with_witness() {
    let p = corpus("rw9.json");
    let o = run(&["check", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("[NO] mixed Jacobi identity holds"));
    assert!(text.contains("witnesses:"));
}

#[test]
fn bad_input_exits_two() {
    let o = run(&["check", "/definitely/not/here.json"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["families", "bogus", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bogus"));
}

#[test]
fn families_output_matches_corpus() {
    let o = run(&["families", "ls", "3,3"]);
    assert_eq!(o.status.code(), Some(0));
    let expected = std::fs::read_to_string(corpus("ls_3_3.json")).unwrap();
    assert_eq!(stdout(&o).trim_end(), expected.trim_end());
}

#[test]
fn derivation_dimensions() {
    let p = corpus("lr7.json");
    let o = run(&["derivations", p.to_str().unwrap()]);
    let text = stdout(&o);
    assert!(text.contains("dim Der(bracket1): 13"));
    assert!(text.contains("dim Der(bracket2): 11"));
    assert!(text.contains("dim Der(pair): 8"));
}

#[test]
fn json_report_is_deterministic() {
    let p = corpus("ln7.json");
    let a = run(&["--json", "--seed", "5", "report", p.to_str().unwrap()]);
    let b = run(&["--json", "--seed", "5", "report", p.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 5);
    let nil = v["facts"]
        .as_array()
        .unwrap()
        .iter()
        .find(|f| f["key"] == "nilindex")
        .unwrap();
    assert_eq!(nil["value"], "6");
}
