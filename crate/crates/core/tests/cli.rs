//! End-to-end runs of the binary.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_localvertex"))
        .args(args)
        .env_remove("LOCALVERTEX_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

fn without_timestamp(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("generated_at");
    v
}

#[test]
fn pt_report_has_schema_and_invariants() {
    let out = run(&["pt", "--r", "0", "--m", "1", "--Q-order", "3", "--n-max", "2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "pt");
    let inv = v["results"][0]["invariants"].as_array().unwrap();
    let pt = |j: i64, n: i64| {
        inv.iter()
            .find(|x| x["j"] == j && x["n"] == n)
            .map(|x| x["value"].to_string())
    };
    // PT_{c,1} = -2 on F_0 (the class c moves in a P^1 family of P^1's).
    assert_eq!(pt(0, 1).as_deref(), Some("-2"));
}

#[test]
fn output_is_deterministic_with_and_without_cache() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["gw", "--r", "1", "--m-max", "1", "--g-max", "1", "--Q-order", "4"];
    let cold = run(&[&["--cache-dir", d], &args[..]].concat());
    let warm = run(&[&["--cache-dir", d], &args[..]].concat());
    let none = run(&args);
    assert!(cold.status.success() && warm.status.success() && none.status.success());
    assert_eq!(without_timestamp(json(&cold)), without_timestamp(json(&warm)));
    assert_eq!(without_timestamp(json(&cold)), without_timestamp(json(&none)));
}

#[test]
fn corrupt_cache_names_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["--cache-dir", d, "pt", "--r", "0", "--m", "1", "--Q-order", "2"];
    assert!(run(&args).status.success());
    let victim = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    std::fs::write(&victim, "{").unwrap();
    let out = run(&args);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains(victim.to_str().unwrap()));
    let stats = run(&["--cache-dir", d, "cache", "clear"]);
    assert!(stats.status.success());
    assert!(run(&args).status.success());
}

#[test]
fn selftest_and_verify_pass() {
    let out = run(&["selftest", "--format", "csv"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("id,name,passed,summary"));
    let out = run(&[
        "verify",
        "--r",
        "0",
        "--r",
        "1",
        "--m-max",
        "1",
        "--Q-order",
        "6",
        "--u-order",
        "2",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn usage_errors_exit_nonzero() {
    assert!(!run(&["pt", "--Q-order", "0"]).status.success());
    assert!(!run(&["pt", "--format", "xml"]).status.success());
    assert!(!run(&["cache", "stats"]).status.success());
}
