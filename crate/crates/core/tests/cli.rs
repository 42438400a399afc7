#![cfg(feature = "cli")]

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_plconvex"));
    c.env_remove("PLCONVEX_SEED");
    c
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("plconvex-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn gen(args: &[&str], name: &str) -> PathBuf {
    let path = scratch(name);
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", path.to_str().unwrap()]);
    assert_eq!(run(&full).status.code(), Some(0));
    path
}

#[test]
fn check_exit_codes() {
    let cube = gen(&["--family", "cube"], "cube.off");
    let out = run(&["check", cube.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("Convex"));
    let out = run(&["check", cube.to_str().unwrap(), "--mode", "float", "--eps", "1e-9"]);
    assert_eq!(out.status.code(), Some(0));

    let dented = gen(&["--family", "dented", "--base", "cube", "--depth", "0.4"], "dented.off");
    let out = run(&["check", dented.to_str().unwrap(), "--output", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "NotConvex");
    assert!(v["witness_face"].is_u64());
    for key in ["reason", "counts", "degree_max", "elapsed_ms"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn invalid_and_usage_errors() {
    let bad = scratch("open.off");
    std::fs::write(&bad, "OFF\n4 1 0\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n3 0 1 2\n").unwrap();
    assert_eq!(run(&["check", bad.to_str().unwrap()]).status.code(), Some(2));
    let garbage = scratch("garbage.off");
    std::fs::write(&garbage, "OFF\n8 6\n").unwrap();
    assert_eq!(run(&["check", garbage.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["check", "/nonexistent/x.off"]).status.code(), Some(4));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(4));
    assert_eq!(run(&["check"]).status.code(), Some(4));
}

#[test]
fn check_never_modifies_input() {
    let cube = gen(&["--family", "dodecahedron"], "dodeca.off");
    let before = std::fs::read(&cube).unwrap();
    run(&["check", cube.to_str().unwrap()]);
    assert_eq!(std::fs::read(&cube).unwrap(), before);
}

#[test]
fn format_detection_by_content() {
    let p = gen(&["--family", "simplex", "--dim", "4", "--format", "plposet"], "simplex4.txt");
    let out = run(&["check", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&p).unwrap();
    assert!(text.contains("\"dimension\": 4"));
}

#[test]
fn seed_from_environment() {
    let a = bin().args(["gen", "--family", "random-hull", "--points", "30"]).env("PLCONVEX_SEED", "9").output().unwrap();
    let b = run(&["gen", "--family", "random-hull", "--points", "30", "--seed", "9"]);
    let c = run(&["gen", "--family", "random-hull", "--points", "30"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn oracle_and_bench() {
    let dented = gen(&["--family", "dented", "--base", "cube"], "dented2.off");
    assert_eq!(run(&["oracle", dented.to_str().unwrap()]).status.code(), Some(1));
    let torus = gen(&["--family", "torus"], "torus.off");
    assert_eq!(run(&["check", torus.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(run(&["oracle", torus.to_str().unwrap()]).status.code(), Some(1));

    let out = run(&["bench", "--sizes", "50,100", "--jobs", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].ends_with("speedup"));
    assert!(lines[1].split(',').nth(9).is_some_and(|s| !s.is_empty()));
    assert!(lines[3].starts_with("# slope,"));
}

#[test]
fn reads_standard_input() {
    use std::io::Write;
    use std::process::Stdio;
    let cube = run(&["gen", "--family", "cube"]).stdout;
    let mut child = bin().args(["check", "-", "--output", "json"]).stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(&cube).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("\"Convex\""));
}
