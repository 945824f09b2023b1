//! End-to-end checks of the binary: flag handling, exit codes, and file
//! outputs.

use std::process::{Command, Output};

fn multizero(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multizero"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).to_string()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).to_string()
}

#[test]
fn bound_all_prints_the_comparison_row() {
    let out = multizero(&[
        "bound",
        "--exponents",
        "4,1",
        "--r",
        "3",
        "--sizes",
        "5,5",
        "--method",
        "all",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("d = 6"), "{text}");
    assert!(text.contains("h = 5"), "{text}");
    assert!(text.contains("szgen = 8"), "{text}");
}

#[test]
fn bound_single_method_and_witness() {
    let out = multizero(&[
        "bound",
        "--exponents",
        "2,2",
        "--r",
        "3",
        "--sizes",
        "5,5",
        "--method",
        "d",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("d = 2"));

    let out = multizero(&[
        "bound",
        "--exponents",
        "3,3",
        "--r",
        "3",
        "--sizes",
        "5,5",
        "--method",
        "h",
        "--witness",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("h = 9"), "{text}");
    assert!(text.contains("witness"), "{text}");
}

#[test]
fn bound_json_output_parses() {
    let out = multizero(&[
        "bound",
        "--exponents",
        "4,1",
        "--r",
        "3",
        "--sizes",
        "5,5",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["d"], 6);
    assert_eq!(value["h"], 5);
    assert_eq!(value["szgen"], 8);
}

#[test]
fn usage_errors_exit_two() {
    let out = multizero(&["bound", "--exponents", "2,2", "--r", "3"]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));

    let out = multizero(&["bound", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));

    let out = multizero(&["table", "--table", "t9"]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));

    // dimension mismatch is a usage error as well
    let out = multizero(&["bound", "--exponents", "2,2", "--r", "3", "--sizes", "5"]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
}

#[test]
fn inapplicable_methods_exit_three() {
    let out = multizero(&[
        "bound",
        "--exponents",
        "3",
        "--r",
        "3",
        "--sizes",
        "5",
        "--method",
        "closed2",
    ]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));

    let out = multizero(&[
        "bound",
        "--exponents",
        "4,5",
        "--r",
        "3",
        "--sizes",
        "5,5",
        "--method",
        "small",
    ]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
}

#[test]
fn table_check_passes_and_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let dir_arg = dir.path().to_str().unwrap();
    let out = multizero(&["table", "--table", "t1", "--check", "--out", dir_arg]);
    assert!(out.status.success(), "{}", stderr(&out));
    let entries: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    assert!(entries.iter().any(|e| e.ends_with(".csv")), "{entries:?}");
    assert!(entries.iter().any(|e| e.ends_with(".json")), "{entries:?}");

    // rerun is idempotent
    let out = multizero(&["table", "--table", "t1", "--check", "--out", dir_arg]);
    assert!(out.status.success());
}

#[test]
fn table_csv_lands_on_stdout_without_out_dir() {
    let out = multizero(&["table", "--table", "t3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("i2\\i1,0,1,"), "{text}");
    assert!(text.contains("876"), "{text}");
}

#[test]
fn single_stat_mode() {
    let out = multizero(&[
        "table",
        "--stat",
        "max-improvement",
        "--m",
        "2",
        "--q",
        "2",
        "--r",
        "2",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("1/4"), "{}", stdout(&out));
}

#[test]
fn verify_dominance_mode() {
    let out = multizero(&[
        "verify",
        "--mode",
        "dominance",
        "--max-q",
        "6",
        "--max-r",
        "3",
        "--max-m",
        "3",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("0 failed"), "{text}");
}

#[test]
fn verify_oracle_mode_is_reproducible_and_json() {
    let args = [
        "verify", "--mode", "oracle", "--trials", "3", "--max-i", "4", "--seed", "7", "--format",
        "json",
    ];
    let first = multizero(&args);
    assert!(first.status.success(), "{}", stderr(&first));
    let second = multizero(&args);
    let a: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    let b: serde_json::Value = serde_json::from_str(&stdout(&second)).unwrap();
    assert_eq!(a["checks_passed"], b["checks_passed"]);
    assert_eq!(a["checks_failed"], 0);
    assert_eq!(a["seed"], 7);
}

#[test]
fn thread_cap_is_respected() {
    let out = Command::new(env!("CARGO_BIN_EXE_multizero"))
        .env("MULTIZERO_THREADS", "1")
        .args(["verify", "--mode", "dominance", "--max-q", "4", "--max-r", "2", "--max-m", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
}
