//! End-to-end checks of the command-line surface: schemas, determinism,
//! check-mode gating, and exit codes.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rmt-edge"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn constants_csv_schema_and_values() {
    let out = run(&["constants", "--q", "0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "quantity,value");
    let body: Vec<&str> = lines.collect();
    let find = |name: &str| -> f64 {
        body.iter()
            .find(|l| l.starts_with(&format!("{name},")))
            .unwrap_or_else(|| panic!("missing row {name}"))
            .split(',')
            .nth(1)
            .unwrap()
            .parse()
            .unwrap()
    };
    assert!((find("gue_c0") - 0.0306294).abs() < 1e-6);
    assert!((find("wishart_c0") - 0.169518).abs() < 1e-5);
    assert!((find("wishart_i2") - 5.0 / 36.0).abs() < 1e-6);
    assert!((find("one_minus_f2_zero") - 0.030627).abs() < 1e-5);
    // dual routes agree at the printed precision
    let closed = find("cq_closed_q0");
    let quad = find("cq_quad_single_q0");
    assert!((closed - quad).abs() < 1e-7);
}

#[test]
fn constants_check_mode_passes() {
    let out = run(&["constants", "--q", "0,1", "--check"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn json_round_trips_with_same_values() {
    let csv = stdout(&run(&["table1", "--N", "10", "--kmax", "3"]));
    let json_out = run(&["table1", "--N", "10", "--kmax", "3", "--format", "json"]);
    assert!(json_out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&json_out)).unwrap();
    let row = &parsed[0];
    // CSV row: N,p1,p2,p3,E_TN
    let csv_row: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row["N"].as_i64().unwrap(), 10);
    for (idx, key) in [(1, "p1"), (2, "p2"), (3, "p3"), (4, "E_TN")] {
        let c: f64 = csv_row[idx].parse().unwrap();
        let j = row[key].as_f64().unwrap();
        assert_eq!(c, j, "field {key} differs between CSV and JSON");
    }
}

#[test]
fn table1_check_mode_gates_on_reference() {
    let out = run(&["table1", "--N", "10,50", "--check"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.lines().next().unwrap().contains("dev_p1"));
    // unknown N cannot be checked
    let out = run(&["table1", "--N", "12", "--check"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn montecarlo_is_byte_deterministic() {
    let args = [
        "montecarlo",
        "gue",
        "--N",
        "20",
        "--q",
        "0",
        "--samples",
        "2000",
        "--seed",
        "7",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    // mean lands within a few sigma of the analytic comparator
    let text = stdout(&a);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let header: Vec<&str> = text.lines().next().unwrap().split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let mean: f64 = row[col("mean")].parse().unwrap();
    let se: f64 = row[col("std_error")].parse().unwrap();
    let analytic: f64 = row[col("analytic")].parse().unwrap();
    assert!((mean - analytic).abs() < 4.0 * se + 1e-3);
}

#[test]
fn montecarlo_wishart_reports_limit_comparator() {
    let out = run(&[
        "montecarlo",
        "wishart",
        "--N",
        "50",
        "--n",
        "100",
        "--samples",
        "500",
        "--seed",
        "3",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let header: Vec<&str> = text.lines().next().unwrap().split(',').collect();
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let analytic: f64 = row[col("analytic")].parse().unwrap();
    assert!((analytic - 0.169518).abs() < 1e-5);
    assert_eq!(row[col("ensemble")], "wishart");
}

#[test]
fn spiked_reports_zero_violations() {
    let out = run(&[
        "spiked",
        "--p",
        "40",
        "--gamma",
        "0.5",
        "--spikes",
        "6",
        "--samples",
        "120",
        "--gap-samples",
        "400",
        "--seed",
        "1",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let header: Vec<&str> = text.lines().next().unwrap().split(',').collect();
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    assert_eq!(row[col("interlace_violations")], "0");
    let exit0: i64 = row[col("exit0")].parse().unwrap();
    let exit1: i64 = row[col("exit1")].parse().unwrap();
    let exit2: i64 = row[col("exit2")].parse().unwrap();
    let exit3: i64 = row[col("exit3plus")].parse().unwrap();
    assert_eq!(exit0 + exit1 + exit2 + exit3, 120);
}

#[test]
fn argument_errors_exit_two() {
    assert_eq!(run(&["table1", "--N", "2000"]).status.code(), Some(2));
    assert_eq!(
        run(&["montecarlo", "gue", "--N", "10", "--samples", "50"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["spiked", "--p", "20", "--eta", "bogus"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["wishart-limit", "--gamma", "1.5"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["constants", "--tol", "1.0"]).status.code(), Some(2));
    // clap-level parse failure
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn wishart_limit_values() {
    let out = run(&["wishart-limit", "--gamma", "1", "--q", "1", "--s", "0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let header: Vec<&str> = text.lines().next().unwrap().split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let tau_q: f64 = row[col("tau_pow_q")].parse().unwrap();
    assert!((tau_q - 2f64.powf(4.0 / 3.0)).abs() < 1e-5);
}

#[test]
fn tailsum_reports_rate_scaled_value() {
    let out = run(&["tailsum", "--N", "100", "--q", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let header: Vec<&str> = text.lines().next().unwrap().split(',').collect();
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let scaled: f64 = row[col("n_rate_scaled")].parse().unwrap();
    let limit: f64 = row[col("cq_limit")].parse().unwrap();
    assert!((scaled / limit - 1.0).abs() < 0.10);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("rmt_edge_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("constants.csv");
    let out = run(&[
        "constants",
        "--q",
        "0",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("quantity,value"));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn digits_flag_controls_precision() {
    let out = run(&["constants", "--q", "0", "--digits", "12"]);
    let text = stdout(&out);
    let c0_line = text
        .lines()
        .find(|l| l.starts_with("gue_c0,"))
        .unwrap();
    let v: f64 = c0_line.split(',').nth(1).unwrap().parse().unwrap();
    assert!((v - 3.06293830789884473e-02).abs() < 1e-13);
}
