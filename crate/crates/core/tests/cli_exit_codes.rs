//! Drives the installed binary end to end: exit code 0 for a passing run,
//! 1 for a failing run, 2 for a config error, and the CSV side channel.

use std::process::Command;

fn verify() -> Command {
    Command::new(env!("CARGO_BIN_EXE_verify"))
}

#[test]
fn passing_run_exits_zero_and_reports_json() {
    let out = verify()
        .args(["--space", "flat", "--sphere", "1.0", "--suite", "spectra"])
        .args(["--order-surface", "6", "--order-volume", "5", "--no-timing"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"all_passed\": true"));
    assert!(text.contains("\"check_id\": \"spectrum\""));
    assert!(!text.contains("timing"));
}

#[test]
fn failing_rows_exit_one() {
    // a crushed tolerance turns quadrature roundoff into failures
    let out = verify()
        .args(["--space", "flat", "--sphere", "1.0", "--suite", "spectra"])
        .args(["--order-surface", "6", "--order-volume", "5"])
        .args(["--tol-scale", "1e-12", "--no-timing"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"all_passed\": false"));
}

#[test]
fn config_errors_exit_two_with_a_specific_message() {
    let out = verify().args(["--space", "cp", "--sphere", "2.0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("radius must be < π/2"), "{err}");
    assert!(out.stdout.is_empty());

    let out = verify().args(["--space", "ch", "--tube", "0.4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_written_next_to_json_output() {
    let dir = std::env::temp_dir().join("kv-exit-test");
    std::fs::create_dir_all(&dir).unwrap();
    let json = dir.join("report.json");
    let csv = dir.join("report.csv");
    let out = verify()
        .args(["--space", "flat", "--sphere", "1.0", "--suite", "boundary"])
        .args(["--order-surface", "10", "--no-timing"])
        .args(["--output", json.to_str().unwrap(), "--csv", csv.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty(), "report goes to the file, not stdout");
    let table = std::fs::read_to_string(&csv).unwrap();
    let mut lines = table.lines();
    assert_eq!(lines.next(), Some("check_id,anchor,lhs,rhs,residual,tolerance,pass"));
    assert_eq!(lines.count(), 3, "boundary suite is three rows");
}
