use std::process::{Command, Output};

use fusionchar_core::MPoly;
use serde_json::Value;

fn fusionchar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fusionchar"))
        .args(args)
        .output()
        .expect("run fusionchar")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn char_text() {
    let o = fusionchar(&["char", "--spec", "2:1,2:1", "--method", "fermionic", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1 + (1+q)*z1 + z1^2");
}

#[test]
fn methods_agree() {
    let run = |m| stdout(&fusionchar(&["char", "--spec", "3:2,2:1,2:1", "--method", m]));
    let fermionic = run("fermionic");
    assert_eq!(fermionic, run("recursive"));
    assert_eq!(fermionic, run("oracle"));
}

#[test]
fn kostka_text() {
    let o = fusionchar(&["kostka", "--level", "2", "--l", "0", "--mu", "2", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "q");
}

#[test]
fn json_envelope_round_trips() {
    let o = fusionchar(&["char", "--spec", "2:2,2:2,2:1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["command"], "char");
    assert_eq!(v["spec"], "2:2,2:2,2:1");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    let chi = MPoly::from_json(&v["result"]).unwrap();
    assert_eq!(chi.eval_at_one(), 18.into());
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--suite", "triple-agreement,basis", "--max-boxes", "3"];
    let a = fusionchar(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, fusionchar(&args).stdout);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["char", "--spec", "2:x"][..],
        &["kostka", "--mu", "2"],
        &["coinv", "--level", "1", "--l", "2", "--lambda", "1"],
        &["verify", "--suite", "nope"],
        &["basis"],
    ] {
        let o = fusionchar(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn alternating_check_passes() {
    let o = fusionchar(&[
        "kostka",
        "--level",
        "2",
        "--l",
        "1",
        "--mu",
        "2,1",
        "--check-alternating",
        "--format",
        "text",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS"));
}

#[test]
fn rank_two_skips_rank_three_suites() {
    let o = fusionchar(&[
        "verify",
        "--suite",
        "coinvariants-rank3",
        "--max-rank",
        "2",
        "--format",
        "text",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("SKIP"));
}

#[test]
fn out_file() {
    let dir = std::env::temp_dir().join(format!("fusionchar-out-{}", std::process::id()));
    let path = dir.to_string_lossy().to_string();
    let o = fusionchar(&["basis", "--spec", "2:1", "--format", "text", "--out", &path]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "1\ne[0]\n");
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn thread_variable() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_fusionchar"))
            .args(["char", "--spec", "2:1"])
            .env("FUSIONCHAR_THREADS", threads)
            .output()
            .unwrap()
    };
    assert_eq!(run("1").status.code(), Some(0));
    assert_eq!(run("zero").status.code(), Some(2));
}
