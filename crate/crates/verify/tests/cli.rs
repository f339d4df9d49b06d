use std::path::{Path, PathBuf};
use std::process::Command;

use gps_verify::csv::{parse_csv, HEADER};

fn gps() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gps"))
}

fn tmp(name: &str) -> PathBuf {
    Path::new(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn write_config(name: &str, text: &str) -> PathBuf {
    let path = tmp(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn list_suites_prints_every_name() {
    let out = gps().args(["verify", "--list-suites"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let names: Vec<&str> = text.lines().collect();
    assert_eq!(names.len(), 10);
    assert!(names.contains(&"plemelj") && names.contains(&"all"));
}

#[test]
fn passing_suite_exits_zero_and_writes_csv() {
    let cfg = write_config("cli_pass.toml", "levels = [2, 3]\n");
    let out = tmp("cli_pass.csv");
    let status = gps()
        .args(["verify", "--suite", "algebra", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with(HEADER));
    let rows = parse_csv(&text).unwrap();
    assert!(!rows.is_empty() && rows.iter().all(|r| r.pass && r.suite == "algebra"));
}

#[test]
fn failing_rows_exit_one() {
    // The slice Teodorescu rows against 2f do not hold.
    let cfg = write_config("cli_fail.toml", "levels = [2, 3]\n");
    let out = gps().args(["verify", "--suite", "teodorescu", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let rows = parse_csv(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert!(rows.iter().any(|r| !r.pass && r.metric == "sup_rel_error_vs_2f"));
}

#[test]
fn bad_input_exits_two_with_a_message() {
    let bad = write_config("cli_bad.toml", "[domain]\ncenter_p = [0.0, 0.0]\nr0 = 1.0\nrho = 1.0\n");
    let cases: Vec<Vec<std::ffi::OsString>> = vec![
        vec!["verify".into(), "--suite".into(), "nope".into()],
        vec!["verify".into(), "--config".into(), bad.into_os_string()],
        vec!["verify".into(), "--config".into(), "/nonexistent/gps.toml".into()],
    ];
    for args in cases {
        let out = gps().args(&args).output().unwrap();
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8(out.stderr).unwrap().contains("error:"));
    }
}

#[test]
fn invalid_thread_cap_is_rejected() {
    let out = gps().args(["verify", "--suite", "algebra"]).env("GPS_THREADS", "zero").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("GPS_THREADS"));
}
