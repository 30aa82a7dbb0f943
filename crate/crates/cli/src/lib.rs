//! Driver behind the `decohere` binary: runs configured experiments and the
//! seeded invariant suite, and writes results as CSV.

pub mod config;

use std::io::Write;

use decohere_core::properties::{run_suite, PropertyOutcome, SuiteConfig};
use decohere_core::{analyze, FamilyKind, StateFamily, DEFAULT_MAX_QUBITS};
use rayon::prelude::*;

pub use config::{ConfigError, ExperimentConfig, Point};

pub const CSV_HEADER: [&str; 9] = [
    "family",
    "n_qubits",
    "cut_bitmask",
    "cut_human",
    "gammas",
    "min_eigenvalue",
    "negativity_sum",
    "formula_value",
    "abs_error",
];

/// One cut of one evaluated point.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub family: FamilyKind,
    pub n_qubits: usize,
    pub cut_bitmask: u64,
    pub cut_human: String,
    pub gammas: Vec<f64>,
    pub min_eigenvalue: f64,
    pub negativity_sum: f64,
    /// Closed-form prediction on the eigenvalue scale (non-positive).
    pub formula_value: Option<f64>,
    /// Distance between the closed form and the oracle quantity it predicts.
    pub abs_error: Option<f64>,
}

/// Shortest decimal string that parses back to `x`. Very small and very
/// large magnitudes switch to exponent notation; negative zero prints as 0.
pub fn format_number(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    let a = x.abs();
    if a != 0.0 && !(1e-5..1e16).contains(&a) {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

impl ResultRow {
    pub fn record(&self) -> [String; 9] {
        let opt = |x: Option<f64>| x.map(format_number).unwrap_or_default();
        [
            self.family.name().to_string(),
            self.n_qubits.to_string(),
            self.cut_bitmask.to_string(),
            self.cut_human.clone(),
            self.gammas.iter().map(|&g| format_number(g)).collect::<Vec<_>>().join(";"),
            format_number(self.min_eigenvalue),
            format_number(self.negativity_sum),
            opt(self.formula_value),
            opt(self.abs_error),
        ]
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] decohere_core::Error),
    #[error("cannot write output: {0}")]
    Output(String),
}

impl CliError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> u8 {
        2
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

/// Rows for a single resolved point, in cut order.
pub fn evaluate(point: &Point) -> Result<Vec<ResultRow>, CliError> {
    let family = StateFamily::new(point.family, point.n_qubits)?;
    let agg = point.schedule.aggregate();
    let reports = analyze(&family, &agg, &point.cuts)?;
    Ok(reports
        .into_iter()
        .map(|r| ResultRow {
            family: point.family,
            n_qubits: point.n_qubits,
            cut_bitmask: r.cut.bitmask(),
            cut_human: r.cut.to_string(),
            gammas: agg.gamma().to_vec(),
            min_eigenvalue: r.min_eigenvalue,
            negativity_sum: r.negativity_sum,
            formula_value: r.formula.map(|f| f.signed()),
            abs_error: r.formula_error(),
        })
        .collect())
}

pub fn cmd_single(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>, CliError> {
    if cfg.sweep.is_some() {
        return Err(CliError::Usage("`single` does not take a [sweep] block; use `sweep`".into()));
    }
    let points = cfg.points()?;
    evaluate(&points[0])
}

/// Evaluates every sweep point (in parallel) and returns the rows in
/// sweep-value order, then cut order.
pub fn cmd_sweep(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>, CliError> {
    if cfg.sweep.is_none() {
        return Err(CliError::Usage("`sweep` needs a [sweep] block in the config".into()));
    }
    let points = cfg.points()?;
    let blocks: Vec<Vec<ResultRow>> = points.par_iter().map(evaluate).collect::<Result<_, _>>()?;
    Ok(blocks.into_iter().flatten().collect())
}

pub fn write_csv<W: Write>(out: W, rows: &[ResultRow]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record(row.record())?;
    }
    w.flush()?;
    Ok(())
}

pub fn cmd_verify(max_n: usize, seed: u64) -> Result<Vec<PropertyOutcome>, CliError> {
    if !(2..=DEFAULT_MAX_QUBITS).contains(&max_n) {
        return Err(CliError::Usage(format!("--max-n must be between 2 and {DEFAULT_MAX_QUBITS}, got {max_n}")));
    }
    Ok(run_suite(&SuiteConfig::new(max_n, seed))?)
}
