//! End-to-end tests of the binary: golden values, the fixed JSON schema,
//! byte-level determinism, and the exit-code contract.

use std::process::{Command, Output};

fn zetakit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zetakit"))
        .args(args)
        .env_remove("ZETAKIT_DIGITS")
        .output()
        .expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn zeta3_lerch_json_golden() {
    let out = zetakit(&["zeta", "--s", "3", "--digits", "50", "--method", "lerch"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["command"], "zeta");
    assert_eq!(v["inputs"]["s"], 3);
    let val = v["value_decimal"].as_str().unwrap();
    assert!(val.starts_with("1.2020569031595942"));
    assert_eq!(val.len(), 51); // 50 significant digits plus the decimal point
    assert_eq!(v["metadata"]["method"], "lerch_4n3");
    assert!(v["metadata"]["truncation"].as_u64().unwrap() > 0);
    assert!(v["error_bound_decimal"]
        .as_str()
        .unwrap()
        .starts_with("1e-"));
}

#[test]
fn even_zeta_coefficient_golden() {
    let out = zetakit(&["coeff", "--kind", "even-zeta", "--n", "3"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["exact_rational"], "1/945");
}

#[test]
fn pi_cf_golden() {
    let out = zetakit(&["cf", "--const", "pi", "--terms", "13", "--digits", "40"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let quotients: Vec<&str> = v["quotients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|q| q.as_str().unwrap())
        .collect();
    assert_eq!(
        quotients,
        ["3", "7", "15", "1", "292", "1", "1", "1", "2", "1", "3", "1", "14"]
    );
    // Convergents include 22/7 and 355/113.
    let conv = v["convergents"].as_array().unwrap();
    assert_eq!(conv[1][0], "22");
    assert_eq!(conv[1][1], "7");
    assert_eq!(conv[3][0], "355");
    assert_eq!(conv[3][1], "113");
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec![
            "zeta",
            "--s",
            "5",
            "--digits",
            "40",
            "--method",
            "ramanujan",
        ],
        vec!["split", "--s", "3", "--digits", "30"],
        vec!["weyl", "--t", "zeta3", "--x", "2000", "--digits", "25"],
        vec![
            "check-dioph",
            "--const",
            "pi",
            "--max-n",
            "8",
            "--format",
            "csv",
        ],
    ] {
        let a = zetakit(&args);
        let b = zetakit(&args);
        assert!(a.status.success(), "failed: {args:?}");
        assert_eq!(a.stdout, b.stdout, "nondeterministic output for {args:?}");
    }
}

#[test]
fn env_variable_sets_default_digits() {
    let out = Command::new(env!("CARGO_BIN_EXE_zetakit"))
        .args(["zeta", "--s", "3"])
        .env("ZETAKIT_DIGITS", "20")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["metadata"]["digits"], 20);
    // Flag beats env.
    let out = Command::new(env!("CARGO_BIN_EXE_zetakit"))
        .args(["zeta", "--s", "3", "--digits", "25"])
        .env("ZETAKIT_DIGITS", "20")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["metadata"]["digits"], 25);
}

#[test]
fn exit_codes() {
    // Unknown flag: clap usage error, exit 2.
    let out = zetakit(&["zeta", "--s", "3", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));

    // Unknown subcommand: exit 2.
    let out = zetakit(&["transmogrify"]);
    assert_eq!(out.status.code(), Some(2));

    // Domain error: digits outside [16, 10000].
    let out = zetakit(&["zeta", "--s", "3", "--digits", "5"]);
    assert_eq!(out.status.code(), Some(2));

    // Wrong residue class for the lerch route.
    let out = zetakit(&["zeta", "--s", "9", "--method", "lerch"]);
    assert_eq!(out.status.code(), Some(2));

    // t = pi is a documented kernel singularity: domain error.
    let out = zetakit(&["weyl", "--t", "pi", "--x", "100"]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8(out.stderr).unwrap();
    assert!(msg.contains("2x+1"), "explanatory note missing: {msg}");

    // sin(pi * 1) = 0: never provably nonzero, exhausts escalation, exit 3.
    let out = zetakit(&["probe", "--alpha", "pi", "--k", "1", "--digits", "16"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn cutoff_override_is_respected() {
    let out = zetakit(&[
        "zeta", "--s", "3", "--digits", "16", "--method", "lerch", "--cutoff", "30",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["metadata"]["truncation"], 30);
    assert_eq!(v["inputs"]["cutoff"], 30);
    assert!(v["value_decimal"]
        .as_str()
        .unwrap()
        .starts_with("1.202056903159594"));
}

#[test]
fn split_report_shape() {
    let out = zetakit(&["split", "--s", "9", "--digits", "25"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["exact_rational"], "0/1");
    let notes = v["metadata"]["notes"].as_array().unwrap();
    assert!(notes
        .iter()
        .any(|n| n.as_str().unwrap().contains("degenerate")));

    let out = zetakit(&["split", "--s", "5", "--digits", "25"]);
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["exact_rational"], "1/294");
    assert_eq!(v["checks"][0]["pass"], true);
}

#[test]
fn weyl_csv_has_expected_columns() {
    let out = zetakit(&[
        "weyl", "--t", "zeta3", "--x", "1000", "--digits", "25", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    let header = text.lines().next().unwrap();
    assert_eq!(
        header,
        "command,bound,brute_err,brute_im,brute_re,closed,normalized,normalized_le_bound,x"
    );
    assert_eq!(text.trim_end().lines().count(), 2);
    assert!(text
        .trim_end()
        .lines()
        .nth(1)
        .unwrap()
        .ends_with("true,1000"));
}

#[test]
fn check_dioph_passes_for_pi() {
    let out = zetakit(&[
        "check-dioph",
        "--const",
        "pi",
        "--max-n",
        "12",
        "--brute-force-bound",
        "10000",
        "--digits",
        "60",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() >= 12);
    for c in checks {
        assert_eq!(c["pass"], true, "failing row: {c}");
    }
    let notes = v["metadata"]["notes"].as_array().unwrap();
    assert!(notes
        .iter()
        .any(|n| n.as_str().unwrap() == "all checks passed"));
}

#[test]
fn exclusion_row_carries_non_proof_note() {
    let out = zetakit(&[
        "check-dioph",
        "--const",
        "zeta3/pi^3",
        "--max-n",
        "4",
        "--exclude-denominators-pow10",
        "30",
        "--digits",
        "120",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let rows = v["checks"].as_array().unwrap();
    let excl = rows
        .iter()
        .find(|r| r["type"] == "rational_exclusion")
        .expect("exclusion row present");
    assert_eq!(excl["found_rational"], serde_json::Value::Null);
    assert!(excl["note"].as_str().unwrap().contains("not a proof"));
}

#[test]
fn derive_reports_discrepancy_for_minus_four() {
    let out = zetakit(&["derive", "--at", "-4", "--digits", "25"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks[0]["candidate"], "closed_form");
    assert_eq!(checks[0]["matches_oracle"], true);
    assert_eq!(checks[1]["candidate"], "alternate_claim");
    assert_eq!(checks[1]["matches_oracle"], false);
    let notes = v["metadata"]["notes"].as_array().unwrap();
    assert!(notes
        .iter()
        .any(|n| n.as_str().unwrap().contains("factor 32")));
}

#[test]
fn probe_expr_handles_ratio_constants() {
    let out = zetakit(&[
        "probe",
        "--alpha",
        "pi^2/zeta3",
        "--k",
        "2",
        "--digits",
        "30",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["checks"][0]["sin_provably_nonzero"], true);
    assert_eq!(v["checks"][0]["concavity_floor_holds"], true);
}

#[test]
fn bad_expressions_are_config_errors() {
    for bad in ["tau", "zeta1", "pi^", "zeta3+pi"] {
        let out = zetakit(&["cf", "--const", bad, "--terms", "4"]);
        assert_eq!(out.status.code(), Some(2), "expected exit 2 for '{bad}'");
    }
}
