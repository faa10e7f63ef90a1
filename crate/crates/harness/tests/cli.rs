use std::fs;
use std::process::{Command, Output};

fn quadray(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadray")).args(args).output().expect("spawn quadray")
}

fn path_str(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn help_exits_zero() {
    assert_eq!(quadray(&["--help"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(quadray(&[]).status.code(), Some(1));
    assert_eq!(quadray(&["render"]).status.code(), Some(1));
    assert_eq!(quadray(&["check", "--seed", "1", "--cases", "0"]).status.code(), Some(1));
    assert_eq!(quadray(&["gen", "--seed", "1", "--objects", "0", "-o", "/dev/null"]).status.code(), Some(1));
    let out = quadray(&["render", "/nonexistent/scene", "--method", "classical", "-o", "/dev/null"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn parse_errors_exit_two_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let scene = dir.path().join("bad.scene");
    fs::write(&scene, "camera 0 0 5 0 0 0 0 1 0 60 8 8\nsphere 0 0 0 -1\n").unwrap();
    let out = quadray(&["render", path_str(&scene), "--method", "separated", "-o", "/dev/null"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2") && err.contains("non-positive radius"), "{err}");
}

#[test]
fn check_single_case() {
    let out = quadray(&["check", "--seed", "9", "--cases", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("comparisons: 1\n"));
}

#[test]
fn injected_fault_exits_three() {
    let out = quadray(&["check", "--seed", "42", "--cases", "50", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stdout).contains("discriminants differ"));
}

#[test]
fn bench_header_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let out = quadray(&[
        "bench", "--seed", "1", "--objects", "3", "--rays", "10", "--method", "both", "--reps", "1", "-o",
        path_str(&csv),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&csv).unwrap();
    let golden = include_str!("data/bench_header.csv");
    assert_eq!(text.lines().next(), golden.lines().next());
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn gen_then_render() {
    let dir = tempfile::tempdir().unwrap();
    let scene = dir.path().join("s.scene");
    let img = dir.path().join("s.pgm");
    assert!(quadray(&["gen", "--seed", "3", "--objects", "5", "-o", path_str(&scene)]).status.success());
    assert!(quadray(&["render", path_str(&scene), "--method", "classical", "-o", path_str(&img)]).status.success());
    let bytes = fs::read(&img).unwrap();
    let header = b"P5\n256 256\n255\n";
    assert_eq!(&bytes[..header.len()], header);
    assert_eq!(bytes.len(), header.len() + 256 * 256);
}
