use std::process::Command;

use calogero_cli::{table_row, verify, SuiteStatus, VerifyReport};

fn calogero(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_calogero")).args(args).env_remove("CALOGERO_SEED").output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

/// Number of partitions of `n` into distinct parts.
fn distinct_partitions(n: usize) -> usize {
    fn go(rest: usize, max: usize) -> usize {
        if rest == 0 {
            return 1;
        }
        (1..=max.min(rest)).map(|k| go(rest - k, k - 1)).sum()
    }
    go(n, n)
}

#[test]
fn a4_row() {
    let row = table_row("A4", 0).unwrap();
    assert_eq!(row.order, 120);
    assert_eq!(row.traces, 1);
    // 5, 4+1, 3+2
    assert_eq!(row.supertraces, distinct_partitions(5));
    assert_eq!(row.supertraces, 3);
    assert!(!row.klein);
    assert!(row.agrees());
}

#[test]
fn i2_7_row() {
    // rotations by 2πk/7, k = 1..3, lack eigenvalue 1; the identity and those
    // rotations lack -1 since 7 is odd
    let m = 7;
    let row = table_row("I2(7)", 0).unwrap();
    assert_eq!(row.order, 2 * m);
    assert_eq!(row.traces, (m - 1) / 2);
    assert_eq!(row.supertraces, 1 + (m - 1) / 2);
    assert!(row.agrees());
}

#[test]
fn b2_row() {
    let row = table_row("B2", 0).unwrap();
    assert_eq!((row.order, row.classes), (8, 5));
    assert_eq!((row.traces, row.supertraces), (2, 2));
    assert!(row.klein);
    assert!(row.agrees());
    assert_eq!(row.nullity_plus, vec![2; 4]);
    assert_eq!(row.nullity_minus, vec![2; 4]);
}

#[test]
fn verify_passes_and_skips() {
    let report = verify("A1", 0).unwrap();
    assert_eq!(report.exit_code(), 0);
    let report = verify("H3", 0).unwrap();
    assert_eq!(report.exit_code(), 0);
    assert!(report.suites.iter().any(|(name, s)| name == "traceval" && matches!(s, SuiteStatus::Skipped(_))));
}

#[test]
fn verify_exit_code_names_first_failure() {
    let report = VerifyReport {
        system: "X".into(),
        suites: vec![
            ("glc".into(), SuiteStatus::Passed(String::new())),
            ("traceval".into(), SuiteStatus::Failed("odd element".into())),
            ("dunkl".into(), SuiteStatus::Failed("commutator".into())),
        ],
    };
    assert_ne!(report.exit_code(), 0);
    assert_eq!(report.first_failure(), Some(("traceval", "odd element")));
}

#[test]
fn binary_verify_exit_codes() {
    let (code, out, _) = calogero(&["verify", "A1"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("all suites passed"));
    let (code, _, err) = calogero(&["verify", "Q7"]);
    assert_ne!(code, 0);
    assert!(err.contains("Q7"), "{err}");
}

#[test]
fn trace_hand_values() {
    let (code, out, _) = calogero(&["trace", "A1", "--kappa", "-1", "--expr", "a0_1 * a1_1"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "1/2 + (-2)*nu^2");
    let (_, out, _) = calogero(&["trace", "A1", "--kappa", "-1", "--expr", "s_1"]);
    assert_eq!(out.trim(), "(-2)*nu");
    let (_, out, _) = calogero(&["trace", "A1", "--kappa", "-1", "--nu", "1/5", "--expr", "a0_1*a1_1", "--approx"]);
    assert_eq!(out.trim(), "21/50 ~ 0.420000");
}

#[test]
fn trace_reports_unknown_generator() {
    let (code, _, err) = calogero(&["trace", "A1", "--kappa", "-1", "--expr", "a0_3"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown generator `a0_3`"), "{err}");
}

#[test]
fn trace_with_central_file() {
    let dir = std::env::temp_dir().join(format!("calogero-central-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a1.txt");
    // classes of A1: identity, reflection
    std::fs::write(&path, "# supertrace\n1\n-2*nu\n").unwrap();
    let (code, out, err) = calogero(&["trace", "A1", "--kappa", "-1", "--central", path.to_str().unwrap(), "--expr", "a0_1*a1_1*s_1"]);
    assert_eq!(code, 0, "{err}");
    let (_, expected, _) = calogero(&["trace", "A1", "--kappa", "-1", "--expr", "a0_1*a1_1*s_1"]);
    assert_eq!(out, expected);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_scalars_are_exact_strings() {
    let (code, out, _) = calogero(&["glc", "G2", "--kappa", "-1", "--nu", "1/3,2", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["nullity"], 3);
    assert_eq!(v["residuals_zero"], true);
    for col in v["basis"].as_array().unwrap() {
        for cell in col.as_array().unwrap() {
            assert!(cell["value"].is_string());
        }
    }
    assert!(!out.contains('.'), "floating point in JSON report: {out}");
}

#[test]
fn seed_environment_overrides_flag() {
    let run = |env: Option<&str>, seed: &str| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_calogero"));
        cmd.args(["glc", "B2", "--kappa", "+1", "--json", "--seed", seed]).env_remove("CALOGERO_SEED");
        if let Some(e) = env {
            cmd.env("CALOGERO_SEED", e);
        }
        let v: serde_json::Value = serde_json::from_slice(&cmd.output().unwrap().stdout).unwrap();
        v["nu"].clone()
    };
    assert_eq!(run(Some("5"), "1"), run(None, "5"));
    assert_ne!(run(None, "1"), run(None, "5"));
}

#[test]
fn gram_and_dunkl_commands() {
    let (code, out, _) = calogero(&["gram", "A1", "--kappa", "-1", "--nu", "1/5", "--max-degree", "3", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let last = &v["rows"][3];
    assert_eq!((last["dimension"].as_u64(), last["rank"].as_u64()), (Some(20), Some(20)));
    let (code, out, _) = calogero(&["dunkl", "B2", "--max-degree", "3"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.matches("PASS").count(), 4);
}

#[test]
fn table_command() {
    let (code, out, _) = calogero(&["table", "A4", "I2(7)", "B2"]);
    assert_eq!(code, 0);
    let rows: Vec<Vec<&str>> = out.lines().skip(1).take(3).map(|l| l.split_whitespace().collect()).collect();
    assert_eq!(&rows[0][..6], ["A4", "120", "7", "1", "3", "no"]);
    assert_eq!(&rows[1][..6], ["I2(7)", "14", "5", "3", "4", "no"]);
    assert_eq!(&rows[2][..6], ["B2", "8", "5", "2", "2", "yes"]);
    assert!(rows.iter().all(|r| r.last() == Some(&"yes")));
}
