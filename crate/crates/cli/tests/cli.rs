use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use decohere_cli::config::{CutSelection, ScheduleSpec, SweepParameter};
use decohere_cli::{cmd_single, cmd_sweep, write_csv, ConfigError, ExperimentConfig, ResultRow, CSV_HEADER};
use decohere_core::properties::least_squares;

fn parse(text: &str) -> ExperimentConfig {
    text.parse().unwrap_or_else(|e| panic!("{e}"))
}

fn csv_text(rows: &[ResultRow]) -> String {
    let mut buf = Vec::new();
    write_csv(&mut buf, rows).unwrap();
    String::from_utf8(buf).unwrap()
}

fn decohere(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_decohere")).args(args).output().expect("binary runs")
}

fn write_config(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn homogeneous(family: &str, n: usize, k: usize, lambda: f64) -> String {
    format!("family = \"{family}\"\nn_qubits = {n}\n[schedule]\nK = {k}\nlambda = {lambda:?}\nphi = 0.0\n")
}

#[test]
fn ghz_identity_channel_rows() {
    let rows = cmd_single(&parse(&homogeneous("ghz", 3, 1, 1.0))).unwrap();
    assert_eq!(rows.len(), 3);
    for r in &rows {
        assert_eq!(r.min_eigenvalue, -0.5);
        assert_eq!(r.formula_value, Some(-0.5));
    }
    let masks: Vec<u64> = rows.iter().map(|r| r.cut_bitmask).collect();
    assert_eq!(masks, [1, 3, 5]);
}

#[test]
fn w_balanced_cut_row() {
    let rows = cmd_single(&parse(&homogeneous("w", 4, 1, 1.0))).unwrap();
    let balanced = rows.iter().find(|r| r.cut_bitmask == 0b0011).unwrap();
    assert_eq!(balanced.cut_human, "1,2|3,4");
    assert!((balanced.min_eigenvalue + 0.5).abs() < 1e-14);
}

#[test]
fn cluster_at_two_qubit_threshold_has_no_negativity() {
    let cfg = parse(&homogeneous("cluster", 2, 1, 2f64.sqrt() - 1.0));
    let rows = cmd_single(&cfg).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].negativity_sum, 0.0);
    assert!(rows[0].min_eigenvalue >= 0.0);
    assert!(rows[0].abs_error.unwrap() < 1e-8);
}

#[test]
fn explicit_schedule_and_cut_list() {
    let cfg = parse(
        "family = \"ghz\"\nn_qubits = 3\ncuts = [5, 1]\n[schedule]\nper_qubit = [[{ lambda = 0.5, phi = 0.3 }], [], [{ lambda = 0.8 }, { lambda = 0.5 }]]\n",
    );
    assert_eq!(cfg.cuts, CutSelection::Masks(vec![5, 1]));
    assert!(matches!(cfg.schedule, ScheduleSpec::PerQubit(_)));
    let rows = cmd_single(&cfg).unwrap();
    assert_eq!(rows.iter().map(|r| r.cut_human.as_str()).collect::<Vec<_>>(), ["1,3|2", "1|2,3"]);
    assert_eq!(rows[0].gammas, vec![0.5, 1.0, 0.4]);
    for r in &rows {
        assert!((r.min_eigenvalue + 0.1).abs() < 1e-15);
    }
}

#[test]
fn ghz_size_sweep_slope() {
    let text = homogeneous("ghz", 2, 1, 0.9).replacen("[schedule]", "cuts = [1]\n[schedule]", 1)
        + "[sweep]\nparameter = \"n_qubits\"\nvalues = [2, 3, 4, 5, 6, 7, 8]\n";
    let cfg = parse(&text);
    assert_eq!(cfg.sweep.as_ref().unwrap().parameter, SweepParameter::NQubits);
    let rows = cmd_sweep(&cfg).unwrap();
    assert_eq!(rows.len(), 7);
    let xs: Vec<f64> = rows.iter().map(|r| r.n_qubits as f64).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.min_eigenvalue.abs().ln()).collect();
    let (slope, _, _) = least_squares(&xs, &ys);
    assert!(((slope - 0.9f64.ln()) / 0.9f64.ln()).abs() < 1e-6, "{slope}");
}

#[test]
fn w_lambda_sweep_on_balanced_cut() {
    let text = homogeneous("w", 4, 1, 0.5).replacen("[schedule]", "cuts = [3]\n[schedule]", 1)
        + "[sweep]\nparameter = \"lambda\"\nvalues = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9]\n";
    let rows = cmd_sweep(&parse(&text)).unwrap();
    assert_eq!(rows.len(), 9);
    for (i, r) in rows.iter().enumerate() {
        let lambda = (i + 1) as f64 / 10.0;
        assert!((r.min_eigenvalue + lambda * lambda / 2.0).abs() < 1e-12, "{lambda}");
    }
}

#[test]
fn collision_count_sweep_at_unit_lambda_is_constant() {
    let text = homogeneous("cluster", 3, 1, 1.0) + "[sweep]\nparameter = \"K\"\nvalues = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10]\n";
    let rows = cmd_sweep(&parse(&text)).unwrap();
    assert_eq!(rows.len(), 30);
    for block in rows.chunks(3) {
        assert_eq!(block, &rows[..3]);
    }
}

#[test]
fn sweep_rows_are_ordered_by_value_then_cut() {
    let text = homogeneous("w", 3, 2, 0.5) + "[sweep]\nparameter = \"lambda\"\nvalues = [0.2, 0.6, 0.95]\n";
    let rows = cmd_sweep(&parse(&text)).unwrap();
    let keys: Vec<(String, u64)> = rows.iter().map(|r| (format!("{:?}", r.gammas[0]), r.cut_bitmask)).collect();
    let g = |l: f64| format!("{:?}", l * l);
    let want: Vec<(String, u64)> =
        [0.2, 0.6, 0.95].iter().flat_map(|&l| [1, 3, 5].map(|m| (g(l), m))).collect();
    assert_eq!(keys, want);
}

#[test]
fn every_formula_row_is_within_tolerance() {
    for family in ["ghz", "w", "cluster"] {
        let n = if family == "cluster" { 3 } else { 5 };
        let text = homogeneous(family, n, 2, 0.5)
            + "[sweep]\nparameter = \"lambda\"\nvalues = [0.0, 0.25, 0.5, 0.75, 0.9, 1.0]\n";
        for r in cmd_sweep(&parse(&text)).unwrap() {
            assert!(r.abs_error.unwrap() <= 1e-8, "{family} {r:?}");
        }
    }
}

#[test]
fn csv_round_trip_recovers_numbers() {
    let text = homogeneous("cluster", 3, 3, 0.77) + "[sweep]\nparameter = \"lambda\"\nvalues = [0.01, 0.3, 0.77]\n";
    let rows = cmd_sweep(&parse(&text)).unwrap();
    let out = csv_text(&rows);
    let mut reader = csv::Reader::from_reader(out.as_bytes());
    assert_eq!(reader.headers().unwrap().iter().collect::<Vec<_>>(), CSV_HEADER);
    let opt = |s: &str| if s.is_empty() { None } else { Some(s.parse::<f64>().unwrap()) };
    for (rec, row) in reader.records().map(Result::unwrap).zip(&rows) {
        assert_eq!(&rec[0], "cluster");
        assert_eq!(rec[2].parse::<u64>().unwrap(), row.cut_bitmask);
        assert_eq!(&rec[3], row.cut_human);
        let gammas: Vec<f64> = rec[4].split(';').map(|g| g.parse().unwrap()).collect();
        assert_eq!(gammas, row.gammas);
        assert_eq!(rec[5].parse::<f64>().unwrap(), row.min_eigenvalue);
        assert_eq!(rec[6].parse::<f64>().unwrap(), row.negativity_sum);
        assert_eq!(opt(&rec[7]), row.formula_value.map(|v| if v == 0.0 { 0.0 } else { v }));
        assert_eq!(opt(&rec[8]), row.abs_error);
    }
}

#[test]
fn formula_columns_empty_when_unavailable() {
    let rows = cmd_single(&parse(&homogeneous("cluster", 4, 1, 0.9))).unwrap();
    let out = csv_text(&rows);
    let line = out.lines().nth(1).unwrap();
    assert!(line.ends_with(",,"), "{line}");
}

#[test]
fn identical_config_gives_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let text = homogeneous("w", 5, 2, 0.8) + "[sweep]\nparameter = \"lambda\"\nvalues = [0.1, 0.4, 0.8]\n";
    let cfg = write_config(dir.path(), "w.toml", &text);
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    assert!(decohere(&["sweep", "--config", &cfg, "--out", a.to_str().unwrap()]).status.success());
    assert!(decohere(&["sweep", "--config", &cfg, "--out", b.to_str().unwrap()]).status.success());
    let stdout = decohere(&["sweep", "--config", &cfg]).stdout;
    let single_thread = Command::new(env!("CARGO_BIN_EXE_decohere"))
        .args(["sweep", "--config", &cfg])
        .env("RAYON_NUM_THREADS", "1")
        .output()
        .unwrap()
        .stdout;
    let a = std::fs::read(a).unwrap();
    assert_eq!(a, std::fs::read(b).unwrap());
    assert_eq!(a, stdout);
    assert_eq!(a, single_thread);
}

#[test]
fn negative_lambda_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "bad.toml", &homogeneous("ghz", 3, 1, 0.5).replace("0.5", "-0.5"));
    let out = decohere(&["single", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("schedule.lambda"));
}

#[test]
fn config_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("unknown.toml", homogeneous("ghz", 3, 1, 0.5) + "extra = 1\n"),
        ("family.toml", homogeneous("dicke", 3, 1, 0.5)),
        ("size.toml", homogeneous("ghz", 1, 1, 0.5)),
        ("order.toml", homogeneous("ghz", 3, 1, 0.5) + "[sweep]\nparameter = \"lambda\"\nvalues = [0.5, 0.5]\n"),
        ("mask.toml", homogeneous("ghz", 3, 1, 0.5).replacen("[schedule]", "cuts = [7]\n[schedule]", 1)),
        ("big.toml", homogeneous("ghz", 11, 1, 0.5)),
        ("syntax.toml", "family = \n".to_string()),
    ];
    for (name, text) in cases {
        let cfg = write_config(dir.path(), name, &text);
        let out = decohere(&["single", "--config", &cfg]);
        assert_eq!(out.status.code(), Some(2), "{name}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let big = decohere(&["single", "--config", dir.path().join("big.toml").to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&big.stderr).contains("warning"));
}

#[test]
fn large_size_accepts_explicit_cuts() {
    let cfg = parse(&homogeneous("ghz", 11, 1, 0.9).replacen("[schedule]", "cuts = [1, 1023]\n[schedule]", 1));
    let rows = cmd_single(&cfg).unwrap();
    assert_eq!(rows.len(), 2);
    for r in rows {
        assert!((r.min_eigenvalue + 0.5 * 0.9f64.powi(11)).abs() < 1e-12);
    }
}

#[test]
fn subcommand_and_block_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let plain = write_config(dir.path(), "plain.toml", &homogeneous("ghz", 3, 1, 0.5));
    let swept = write_config(
        dir.path(),
        "swept.toml",
        &(homogeneous("ghz", 3, 1, 0.5) + "[sweep]\nparameter = \"K\"\nvalues = [1, 2]\n"),
    );
    assert_eq!(decohere(&["sweep", "--config", &plain]).status.code(), Some(2));
    assert_eq!(decohere(&["single", "--config", &swept]).status.code(), Some(2));
    assert_eq!(decohere(&["single"]).status.code(), Some(2));
    assert_eq!(decohere(&["single", "--config", "/nonexistent/x.toml"]).status.code(), Some(2));
    let out = decohere(&["sweep", "--config", &swept, "--out", "/nonexistent/dir/out.csv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_small_is_fast_and_passes() {
    let start = Instant::now();
    let out = decohere(&["verify", "--max-n", "3", "--seed", "99"]);
    assert!(start.elapsed() < Duration::from_secs(10));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.lines().filter(|l| l.starts_with("PASS")).count() >= 17);
}

#[test]
fn verify_rejects_bad_size() {
    assert_eq!(decohere(&["verify", "--max-n", "1"]).status.code(), Some(2));
    assert_eq!(decohere(&["verify", "--max-n", "40"]).status.code(), Some(2));
}

#[test]
fn config_error_values() {
    let err = homogeneous("ghz", 3, 1, 0.5)
        .replace("K = 1", "K = -1")
        .parse::<ExperimentConfig>()
        .unwrap_err();
    assert!(matches!(err, ConfigError::Field { ref field, .. } if field == "schedule.K"), "{err}");
}
