use std::process::{Command, Output};

use padovan_core::solve_characteristic_cubic;
use serde_json::Value;

fn padovan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_padovan"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = padovan(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).expect("valid JSON")
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().unwrap().iter().map(String::from).collect();
    let rows = reader
        .records()
        .map(|r| r.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

fn phi(p: f64, q: f64) -> f64 {
    solve_characteristic_cubic(p, q).unwrap().phi
}

#[test]
fn sequence_unit_parameters_end_at_four() {
    let (header, rows) = csv_rows(&ok(&["sequence", "--p", "1", "--q", "1", "--n", "8"]));
    assert_eq!(header, ["n", "S_n", "S_n_decimal"]);
    assert_eq!(rows.len(), 9);
    assert_eq!(rows[8][..2], ["8", "4"]);
}

#[test]
fn sequence_from_alpha_beta_gamma() {
    let out = ok(&[
        "sequence", "--alpha", "2", "--beta", "5", "--gamma", "4", "--n", "6",
    ]);
    assert!(out.ends_with("6,\"141/64\",2.203125000000\n"), "{out}");
}

#[test]
fn sequence_single_row() {
    let (_, rows) = csv_rows(&ok(&["sequence", "--p", "1", "--q", "1", "--n", "0"]));
    assert_eq!(rows, [["0", "1", "1.000000000000"]]);
}

#[test]
fn sequence_binet_columns() {
    let (header, rows) = csv_rows(&ok(&[
        "sequence", "--p", "5/4", "--q", "1/2", "--n", "40", "--binet",
    ]));
    assert_eq!(header[3..], ["binet", "binet_rel_error"]);
    for row in rows {
        let err: f64 = row[4].parse().unwrap();
        assert!(err < 1e-9, "{row:?}");
    }
}

#[test]
fn scalar_scenario_converges() {
    let out = ok(&[
        "iterate", "--alpha", "2", "--beta", "5", "--gamma", "4", "--x-1", "3", "--x0", "0.2",
        "--steps", "100", "--format", "csv",
    ]);
    let (_, rows) = csv_rows(&out);
    let last = rows.last().unwrap();
    assert_eq!(last[0], "100");
    let x: f64 = last[2].parse().unwrap();
    assert!((x - phi(1.25, 0.5)).abs() < 1e-6);
    // Decimal 0.2 is read as the exact rational 1/5.
    assert_eq!(rows[1][1], "1/5");
}

#[test]
fn system_scenario_converges_to_one() {
    let out = ok(&[
        "iterate",
        "--system",
        "--alpha",
        "2",
        "--beta",
        "3",
        "--gamma",
        "5",
        "--x-1",
        "1.2",
        "--x0",
        "3.6",
        "--y-1",
        "2.3",
        "--y0",
        "0.8",
        "--steps",
        "100",
        "--backend",
        "float",
    ]);
    let (header, rows) = csv_rows(&out);
    assert_eq!(header, ["n", "x_n", "x_n_decimal", "y_n", "y_n_decimal"]);
    let last = rows.last().unwrap();
    let x: f64 = last[1].parse().unwrap();
    let y: f64 = last[3].parse().unwrap();
    assert!((x - 1.0).abs() < 1e-6 && (y - 1.0).abs() < 1e-6, "{last:?}");
}

#[test]
fn zero_steps_echo_initials() {
    let (_, rows) = csv_rows(&ok(&[
        "iterate", "--p", "1", "--q", "1", "--x-1", "-3/2", "--x0", "7", "--steps", "0",
    ]));
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][..2], ["-1", "-3/2"]);
    assert_eq!(rows[1][..2], ["0", "7"]);
}

#[test]
fn csv_is_rfc4180_with_lf_and_quoted_rationals() {
    let out = ok(&[
        "iterate", "--p", "5/4", "--q", "1/2", "--x-1", "3", "--x0", "1/5", "--steps", "3",
    ]);
    assert!(!out.contains('\r'));
    assert!(out.ends_with('\n'));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "\"n\",\"x_n\",\"x_n_decimal\"");
    assert!(lines[2].starts_with("0,\"1/5\","), "{}", lines[2]);
    assert!(lines[3].starts_with("1,\"85/12\","), "{}", lines[3]);
}

#[test]
fn json_envelope_shape() {
    let v = json(&[
        "iterate", "--alpha", "2", "--beta", "5", "--gamma", "4", "--x-1", "3", "--x0", "0.2",
        "--steps", "2", "--format", "json",
    ]);
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["command"], "iterate");
    for (key, expected) in [
        ("alpha", "2"),
        ("beta", "5"),
        ("gamma", "4"),
        ("p", "5/4"),
        ("q", "1/2"),
    ] {
        assert_eq!(v["params"][key], expected);
    }
    assert_eq!(v["run"]["termination"]["status"], "completed");
    let data = v["data"].as_array().unwrap();
    assert_eq!(data.len(), 4);
    assert_eq!(data[2]["x_n"], "85/12");
}

#[test]
fn pq_form_echoes_alpha_beta_gamma() {
    let v = json(&[
        "sequence", "--p", "3/5", "--q", "2/5", "--n", "1", "--format", "json",
    ]);
    assert_eq!(v["params"]["alpha"], "2/5");
    assert_eq!(v["params"]["beta"], "3/5");
    assert_eq!(v["params"]["gamma"], "1");
}

#[test]
fn compare_exact_has_zero_deviation() {
    for system in [false, true] {
        let mut args = vec![
            "compare", "--p", "3/5", "--q", "2/5", "--x-1", "1.2", "--x0", "3.6", "--steps", "60",
            "--format", "json",
        ];
        if system {
            args.extend(["--system", "--y-1", "2.3", "--y0", "0.8"]);
        }
        let v = json(&args);
        assert_eq!(v["run"]["max_abs_deviation"], "0");
        assert_eq!(v["data"].as_array().unwrap().len(), 62);
    }
}

#[test]
fn compare_float_drift_is_small() {
    let v = json(&[
        "compare",
        "--p",
        "1",
        "--q",
        "1",
        "--x-1",
        "2",
        "--x0",
        "3",
        "--steps",
        "200",
        "--backend",
        "float",
        "--format",
        "json",
    ]);
    let rel = v["run"]["max_rel_deviation"].as_f64().unwrap();
    assert!(rel < 1e-9, "{rel}");
}

#[test]
fn compare_forbidden_reports_set_and_index() {
    let args = [
        "compare", "--p", "1", "--q", "1", "--x-1", "-1", "--x0", "7", "--steps", "10",
    ];
    let out = padovan(&args);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "forbidden_initials");
    assert_eq!(err["error"]["set"], "F");
    assert_eq!(err["error"]["index"], 2);

    let mut strict = args.to_vec();
    strict.push("--strict");
    assert_eq!(padovan(&strict).status.code(), Some(3));
}

#[test]
fn iterate_strict_forbidden_exits_three() {
    let base = [
        "iterate", "--p", "1", "--q", "1", "--x-1", "-1", "--x0", "7",
    ];
    let relaxed = padovan(&base);
    assert_eq!(relaxed.status.code(), Some(0));
    let (_, rows) = csv_rows(&String::from_utf8(relaxed.stdout).unwrap());
    assert_eq!(rows.last().unwrap()[0], "1");

    let mut strict = base.to_vec();
    strict.push("--strict");
    let out = padovan(&strict);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stdout.is_empty(), "partial orbit is still written");
}

#[test]
fn stability_reports() {
    let v = json(&["stability", "--p", "1", "--q", "1"]);
    let r = &v["data"][0];
    assert!((r["t1"].as_f64().unwrap() + 1.0).abs() < 1e-12);
    assert!((r["t2"].as_f64().unwrap() + 0.4302).abs() < 1e-4);
    assert!(r["spectral_radius"].as_f64().unwrap() < 1.0);
    assert_eq!(r["verdict"], "stable");
    assert_eq!(r["clark"]["holds"], false);
    assert!((r["clark"]["sum"].as_f64().unwrap() - 1.4302).abs() < 1e-4);

    let v = json(&["stability", "--p", "3/5", "--q", "2/5"]);
    let r = &v["data"][0];
    assert_eq!(r["phi"], 1.0);
    assert!((r["t2"].as_f64().unwrap() + 0.4).abs() < 1e-12);
    assert!((r["spectral_radius"].as_f64().unwrap() - 0.4_f64.sqrt()).abs() < 1e-12);
    assert!((r["clark"]["sum"].as_f64().unwrap() - 1.4).abs() < 1e-12);
    assert_eq!(r["verdict"], "stable");

    let v = json(&["stability", "--p", "5/4", "--q", "1/2"]);
    let r = &v["data"][0];
    assert!((r["t1_fd"].as_f64().unwrap() - r["t1"].as_f64().unwrap()).abs() < 1e-6);
    assert!((r["t2_fd"].as_f64().unwrap() - r["t2"].as_f64().unwrap()).abs() < 1e-6);
}

#[test]
fn stability_system_adds_equilibrium() {
    let v = json(&[
        "stability",
        "--system",
        "--alpha",
        "2",
        "--beta",
        "3",
        "--gamma",
        "5",
    ]);
    let e = &v["data"][1];
    assert_eq!(e["x"], 1.0);
    assert_eq!(e["y"], 1.0);
    assert!(e["substitution_residual"].as_f64().unwrap() < 1e-12);
}

#[test]
fn forbidden_examples() {
    let v = json(&[
        "forbidden",
        "--p",
        "1",
        "--q",
        "1",
        "--x-1",
        "-1",
        "--x0",
        "7",
    ]);
    assert_eq!(v["data"][0]["hit"], true);
    assert_eq!(v["data"][0]["first_index"], 2);

    let v = json(&[
        "forbidden",
        "--p",
        "1",
        "--q",
        "1",
        "--x-1",
        "2",
        "--x0",
        "3",
        "--horizon",
        "500",
    ]);
    assert_eq!(v["data"][0]["hit"], false);
    assert_eq!(v["data"][0]["scanned_horizon"], 500);

    let out = padovan(&[
        "forbidden",
        "--p",
        "1",
        "--q",
        "1",
        "--x-1",
        "0",
        "--x0",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_is_deterministic_and_converges() {
    let args = ["sweep", "--p", "1", "--q", "1"];
    let first = ok(&args);
    let second = ok(&args);
    assert_eq!(first, second);
    let mut parallel = args.to_vec();
    parallel.push("--parallel");
    assert_eq!(ok(&parallel), first);

    let v: Value = serde_json::from_str(&first).unwrap();
    let r = &v["data"][0];
    assert_eq!(r["n_trials"], 500);
    assert_eq!(r["n_steps"], 300);
    assert_eq!(r["converged_count"], 500);
}

#[test]
fn sweep_seed_changes_draws() {
    let a = json(&[
        "sweep", "--p", "1", "--q", "1", "--trials", "3", "--steps", "1", "--seed", "1",
    ]);
    let b = json(&[
        "sweep", "--p", "1", "--q", "1", "--trials", "3", "--steps", "1", "--seed", "2",
    ]);
    assert_ne!(a["data"][0]["failures"], b["data"][0]["failures"]);
}

#[test]
fn out_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("seq.csv");
    let stdout = ok(&[
        "sequence",
        "--p",
        "1",
        "--q",
        "1",
        "--n",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        written,
        ok(&["sequence", "--p", "1", "--q", "1", "--n", "3"])
    );
}

#[test]
fn config_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["sequence", "--n", "3"],
        &["sequence", "--p", "1", "--n", "3"],
        &[
            "sequence", "--p", "1", "--q", "1", "--alpha", "1", "--n", "3",
        ],
        &["sequence", "--alpha", "1", "--beta", "1", "--gamma", "0"],
        &["iterate", "--p", "1", "--q", "1"],
        &[
            "iterate", "--p", "1", "--q", "1", "--x-1", "1", "--x0", "nope",
        ],
        &[
            "iterate",
            "--p",
            "1",
            "--q",
            "1",
            "--x-1",
            "1",
            "--x0",
            "1",
            "--precision",
            "0",
        ],
        &["stability", "--p", "1", "--q", "1", "--format", "csv"],
        &["stability", "--p", "0", "--q", "1"],
        &[
            "forbidden",
            "--p",
            "1",
            "--q",
            "1",
            "--x-1",
            "1",
            "--x0",
            "1",
            "--horizon",
            "0",
        ],
    ];
    for args in cases {
        assert_eq!(padovan(args).status.code(), Some(2), "{args:?}");
    }
}
