use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hyperdescent"))
}

fn tmp(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hyperdescent-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn run(args: &[&str]) -> (i32, String, String) {
    let o = bin().args(args).output().unwrap();
    (o.status.code().unwrap(), String::from_utf8(o.stdout).unwrap(), String::from_utf8(o.stderr).unwrap())
}

#[test]
fn pillai_passes_with_schema_version() {
    let (code, out, _) = run(&["pillai"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["status"], "pass");
}

#[test]
fn csv_output() {
    let (code, out, _) = run(&["rank-bound", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("kind,id,status,expected,observed\n"));
    assert!(out.contains("check,geometric-bound,pass,>= rank 8,8 (sharp)"));
}

#[test]
fn failing_verdict_exits_one() {
    let p = tmp("over.json", r#"{"d_a": 2, "g_b": 0, "conductor_degree": 16, "known_rank": 9}"#);
    let (code, out, _) = run(&["rank-bound", "--config", p.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("\"status\": \"fail\""));
}

#[test]
fn budget_exhaustion_exits_two() {
    let (code, out, _) = run(&["verify-d6", "--budget", "10", "--strategy", "scan"]);
    assert_eq!(code, 2);
    assert!(out.contains("\"inconclusive\""));
}

#[test]
fn input_errors_exit_three() {
    let bad = tmp("bad.json", r#"{"schema_version": 1, "surface": "d6", "p": 67, "g": "t^3 + 2*t +"}"#);
    let (code, _, err) = run(&["verify-d6", "--config", bad.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(err.contains("parse error at offset 11"), "{err}");
    let (code, _, _) = run(&["verify-d5", "--config", "/nonexistent/x.json"]);
    assert_eq!(code, 3);
    let char5 = tmp("c5.json", r#"{"schema_version": 1, "surface": "d5", "p": 5, "g": "t^3 + t + 1"}"#);
    let (code, _, err) = run(&["verify-d5", "--config", char5.to_str().unwrap()]);
    assert_eq!(code, 3, "{err}");
    let schema = tmp("schema.json", r#"{"d_a": 2, "g_b": 0}"#);
    assert_eq!(run(&["rank-bound", "--config", schema.to_str().unwrap()]).0, 3);
    assert_eq!(run(&["verify-d5", "--strategy", "guess"]).0, 3);
}

#[test]
fn jacobian_config_and_out_file() {
    let cfg = tmp(
        "jac.json",
        r#"{"schema_version": 1, "surface": "custom-hyperelliptic", "p": 7, "f": "x^5 + 2",
            "jacobian": {"operation": "add", "operands": [{"a": "x", "b": "3"}, {"a": "x", "b": "3"}]}}"#,
    );
    let out = cfg.with_file_name("jac-out.json");
    let (code, _, _) = run(&["jacobian", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["results"]["sum"]["a"], "x^2");
    let bad = tmp("jac-bad.json", &std::fs::read_to_string(&cfg).unwrap().replace(r#""b": "3"}, {"#, r#""b": "1"}, {"#));
    let (code, _, err) = run(&["jacobian", "--config", bad.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(err.contains("not on jacobian"), "{err}");
}
