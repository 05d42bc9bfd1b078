//! End-to-end checks of the `sl2tilt` binary: output shapes and exit codes.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sl2tilt"))
        .args(args)
        .output()
        .expect("failed to launch sl2tilt binary")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn tilt_prints_the_even_block_table() {
    let out = run(&["tilt", "--p", "3", "--n", "2", "--block", "even"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("_3 M_7"), "missing decorated symbol:\n{text}");
    assert!(text.contains("_1 M_3"), "missing final row:\n{text}");
}

#[test]
fn tilt_json_is_well_formed() {
    let out = run(&[
        "tilt", "--p", "2", "--n", "2", "--block", "all", "--format", "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["p"], 2);
    assert_eq!(doc["n"], 2);
    assert!(doc["rows"].as_array().unwrap().len() >= 3);
}

#[test]
fn verify_passes_on_small_parameters() {
    for (p, n) in [("2", "3"), ("3", "2"), ("5", "2")] {
        let out = run(&["verify", "--p", p, "--n", n]);
        assert!(out.status.success(), "verify failed at p={p} n={n}");
        let text = stdout(&out);
        assert!(text.contains("PASS"), "no PASS lines:\n{text}");
        assert!(!text.contains("FAIL"), "FAIL line present:\n{text}");
    }
}

#[test]
fn homdim_reports_the_expected_count() {
    let out = run(&[
        "homdim", "--p", "3", "--n", "2", "--j", "0", "--b", "4", "--jj", "3",
        "--c", "7",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("= 1"), "got: {}", stdout(&out));
}

#[test]
fn frobenius_contains_the_worked_row() {
    let out = run(&["frobenius", "--p", "3", "--n", "6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let row = text
        .lines()
        .find(|l| l.starts_with("77 ") || l.starts_with("77\t"))
        .unwrap_or_else(|| panic!("row for a=77 missing:\n{text}"));
    assert!(row.contains("-18"), "phi' should be -18 in: {row}");
}

#[test]
fn tables_checks_every_fixture() {
    let out = run(&["tables"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for name in ["table_1a", "table_2_even", "table_2_odd", "table_3", "sl2_4"] {
        assert!(text.contains(&format!("PASS {name}")), "missing {name}:\n{text}");
    }
}

#[test]
fn usage_errors_exit_with_code_one() {
    // unknown subcommand
    assert_eq!(run(&["frobble"]).status.code(), Some(1));
    // p must be prime
    assert_eq!(
        run(&["tilt", "--p", "4", "--n", "2"]).status.code(),
        Some(1)
    );
    // index out of range for the chosen parameters
    assert_eq!(
        run(&[
            "homdim", "--p", "2", "--n", "2", "--j", "0", "--b", "9", "--jj",
            "0", "--c", "0",
        ])
        .status
        .code(),
        Some(1)
    );
}
