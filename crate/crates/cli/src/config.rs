//! Experiment configuration: a TOML document, parsed strictly and then
//! validated field by field.
//!
//! ```toml
//! family = "ghz"
//! n_qubits = 4
//! cuts = "all"            # or a list of bitmasks, bit (i-1) = qubit i
//!
//! [schedule]              # homogeneous form
//! K = 2
//! lambda = 0.9
//! phi = 0.0
//!
//! [sweep]                 # optional
//! parameter = "lambda"    # lambda | K | n_qubits
//! values = [0.1, 0.5, 0.9]
//! ```
//!
//! The explicit schedule form lists collisions per qubit instead:
//! `per_qubit = [[{ lambda = 0.9, phi = 0.1 }], []]`.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use decohere_core::{BipartiteCut, CollisionParams, CollisionSchedule, FamilyKind, DEFAULT_MAX_QUBITS};
use serde::Deserialize;

/// Largest size for which `cuts = "all"` is accepted.
pub const MAX_ALL_CUTS_QUBITS: usize = 10;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {message}")]
    Read { path: String, message: String },
    #[error("config parse error: {0}")]
    Parse(String),
    #[error("config field `cuts`: \"all\" is limited to {MAX_ALL_CUTS_QUBITS} qubits; list the cut bitmasks explicitly for n_qubits = {n}")]
    AllCutsTooLarge { n: usize },
    #[error("config field `{field}`: {message}")]
    Field { field: String, message: String },
}

impl ConfigError {
    fn field(field: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError::Field { field: field.into(), message: message.into() }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    family: String,
    n_qubits: i64,
    schedule: RawSchedule,
    cuts: Option<RawCuts>,
    sweep: Option<RawSweep>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSchedule {
    #[serde(rename = "K")]
    k: Option<i64>,
    lambda: Option<f64>,
    phi: Option<f64>,
    per_qubit: Option<Vec<Vec<RawCollision>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCollision {
    lambda: f64,
    #[serde(default)]
    phi: f64,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawCuts {
    Keyword(String),
    Masks(Vec<i64>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    parameter: String,
    values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScheduleSpec {
    Homogeneous { k: usize, lambda: f64, phi: f64 },
    /// `(lambda, phi)` pairs in collision order, one list per qubit.
    PerQubit(Vec<Vec<(f64, f64)>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CutSelection {
    All,
    Masks(Vec<u64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    Lambda,
    K,
    NQubits,
}

impl FromStr for SweepParameter {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "lambda" => Ok(SweepParameter::Lambda),
            "K" => Ok(SweepParameter::K),
            "n_qubits" => Ok(SweepParameter::NQubits),
            other => Err(ConfigError::field(
                "sweep.parameter",
                format!("expected one of lambda, K, n_qubits, got `{other}`"),
            )),
        }
    }
}

impl fmt::Display for SweepParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepParameter::Lambda => "lambda",
            SweepParameter::K => "K",
            SweepParameter::NQubits => "n_qubits",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
}

/// A validated experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub family: FamilyKind,
    pub n_qubits: usize,
    pub schedule: ScheduleSpec,
    pub cuts: CutSelection,
    pub sweep: Option<Sweep>,
}

/// One fully resolved evaluation: a state size, its schedule and its cuts.
#[derive(Debug, Clone)]
pub struct Point {
    pub family: FamilyKind,
    pub n_qubits: usize,
    pub schedule: CollisionSchedule<f64>,
    pub cuts: Vec<BipartiteCut>,
}

impl ExperimentConfig {
    pub fn from_path(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::Read { path: path.display().to_string(), message: e.to_string() })?;
        text.parse()
    }

    /// Expands the config into evaluation points, one per sweep value (or a
    /// single point without a sweep), in sweep-value order.
    pub fn points(&self) -> Result<Vec<Point>, ConfigError> {
        match &self.sweep {
            None => Ok(vec![self.point_for(self.n_qubits, &self.schedule)?]),
            Some(sweep) => sweep
                .values
                .iter()
                .map(|&v| {
                    let (n, schedule) = self.swept(sweep.parameter, v)?;
                    self.point_for(n, &schedule)
                })
                .collect(),
        }
    }

    fn swept(&self, parameter: SweepParameter, v: f64) -> Result<(usize, ScheduleSpec), ConfigError> {
        let ScheduleSpec::Homogeneous { k, lambda, phi } = self.schedule else {
            return Err(ConfigError::field("sweep", "a sweep needs the homogeneous schedule form (K, lambda, phi)"));
        };
        Ok(match parameter {
            SweepParameter::Lambda => (self.n_qubits, ScheduleSpec::Homogeneous { k, lambda: v, phi }),
            SweepParameter::K => (self.n_qubits, ScheduleSpec::Homogeneous { k: v as usize, lambda, phi }),
            SweepParameter::NQubits => (v as usize, self.schedule.clone()),
        })
    }

    fn point_for(&self, n: usize, schedule: &ScheduleSpec) -> Result<Point, ConfigError> {
        let schedule = match schedule {
            ScheduleSpec::Homogeneous { k, lambda, phi } => CollisionSchedule::homogeneous(n, *k, *lambda, *phi)
                .map_err(|e| ConfigError::field("schedule", e.to_string()))?,
            ScheduleSpec::PerQubit(lists) => {
                let lists = lists
                    .iter()
                    .enumerate()
                    .map(|(q, list)| {
                        list.iter()
                            .enumerate()
                            .map(|(j, &(lambda, phi))| {
                                CollisionParams::new(lambda, phi).map_err(|e| {
                                    ConfigError::field(format!("schedule.per_qubit[{q}][{j}]"), e.to_string())
                                })
                            })
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                CollisionSchedule::from_lists(lists)
            }
        };
        let cuts = match &self.cuts {
            CutSelection::All => {
                decohere_core::enumerate_cuts(n).map_err(|e| ConfigError::field("cuts", e.to_string()))?
            }
            CutSelection::Masks(masks) => masks
                .iter()
                .map(|&m| {
                    BipartiteCut::from_label_mask(n, m)
                        .map_err(|e| ConfigError::field("cuts", format!("mask {m} for n_qubits = {n}: {e}")))
                })
                .collect::<Result<_, _>>()?,
        };
        Ok(Point { family: self.family, n_qubits: n, schedule, cuts })
    }
}

impl FromStr for ExperimentConfig {
    type Err = ConfigError;

    fn from_str(text: &str) -> Result<Self, ConfigError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
        validate(raw)
    }
}

fn check_n(field: &str, n: i64) -> Result<usize, ConfigError> {
    if (2..=DEFAULT_MAX_QUBITS as i64).contains(&n) {
        Ok(n as usize)
    } else {
        Err(ConfigError::field(field, format!("must be between 2 and {DEFAULT_MAX_QUBITS}, got {n}")))
    }
}

fn check_lambda(field: &str, lambda: f64) -> Result<f64, ConfigError> {
    if (0.0..=1.0).contains(&lambda) {
        Ok(lambda)
    } else {
        Err(ConfigError::field(field, format!("must lie in [0, 1], got {lambda}")))
    }
}

fn check_phi(field: &str, phi: f64) -> Result<f64, ConfigError> {
    if phi.is_finite() {
        Ok(phi)
    } else {
        Err(ConfigError::field(field, format!("must be finite, got {phi}")))
    }
}

fn check_k(field: &str, k: f64) -> Result<usize, ConfigError> {
    if k >= 0.0 && k.fract() == 0.0 && k <= 1e6 {
        Ok(k as usize)
    } else {
        Err(ConfigError::field(field, format!("must be a non-negative integer, got {k}")))
    }
}

fn validate(raw: RawConfig) -> Result<ExperimentConfig, ConfigError> {
    let family: FamilyKind = raw
        .family
        .parse()
        .map_err(|_| ConfigError::field("family", format!("expected ghz, w or cluster, got `{}`", raw.family)))?;
    let n_qubits = check_n("n_qubits", raw.n_qubits)?;

    let s = raw.schedule;
    let schedule = match (s.k, s.lambda, s.phi, s.per_qubit) {
        (Some(k), Some(lambda), phi, None) => ScheduleSpec::Homogeneous {
            k: check_k("schedule.K", k as f64)?,
            lambda: check_lambda("schedule.lambda", lambda)?,
            phi: check_phi("schedule.phi", phi.unwrap_or(0.0))?,
        },
        (None, None, None, Some(lists)) => {
            for (q, list) in lists.iter().enumerate() {
                for (j, c) in list.iter().enumerate() {
                    check_lambda(&format!("schedule.per_qubit[{q}][{j}].lambda"), c.lambda)?;
                    check_phi(&format!("schedule.per_qubit[{q}][{j}].phi"), c.phi)?;
                }
            }
            ScheduleSpec::PerQubit(lists.into_iter().map(|l| l.into_iter().map(|c| (c.lambda, c.phi)).collect()).collect())
        }
        (_, _, _, Some(_)) => {
            return Err(ConfigError::field("schedule", "give either K/lambda/phi or per_qubit, not both"))
        }
        (None, _, _, None) => return Err(ConfigError::field("schedule.K", "missing")),
        (_, None, _, None) => return Err(ConfigError::field("schedule.lambda", "missing")),
    };

    let cuts = match raw.cuts {
        None => CutSelection::All,
        Some(RawCuts::Keyword(k)) if k == "all" => CutSelection::All,
        Some(RawCuts::Keyword(k)) => {
            return Err(ConfigError::field("cuts", format!("expected \"all\" or a list of bitmasks, got `{k}`")))
        }
        Some(RawCuts::Masks(masks)) => {
            if masks.is_empty() {
                return Err(ConfigError::field("cuts", "the list is empty"));
            }
            let masks = masks
                .into_iter()
                .map(|m| u64::try_from(m).map_err(|_| ConfigError::field("cuts", format!("negative mask {m}"))))
                .collect::<Result<Vec<_>, _>>()?;
            CutSelection::Masks(masks)
        }
    };

    let sweep = match raw.sweep {
        None => None,
        Some(rs) => {
            let parameter: SweepParameter = rs.parameter.parse()?;
            if rs.values.is_empty() {
                return Err(ConfigError::field("sweep.values", "the list is empty"));
            }
            if let Some(i) = rs.values.windows(2).position(|w| w[0] >= w[1] || w[0].is_nan() || w[1].is_nan()) {
                return Err(ConfigError::field(
                    "sweep.values",
                    format!("must be strictly increasing ({} then {})", rs.values[i], rs.values[i + 1]),
                ));
            }
            for (i, &v) in rs.values.iter().enumerate() {
                let field = format!("sweep.values[{i}]");
                match parameter {
                    SweepParameter::Lambda => drop(check_lambda(&field, v)?),
                    SweepParameter::K => drop(check_k(&field, v)?),
                    SweepParameter::NQubits => {
                        if v.fract() != 0.0 {
                            return Err(ConfigError::field(field, format!("must be an integer, got {v}")));
                        }
                        check_n(&field, v as i64)?;
                    }
                }
            }
            Some(Sweep { parameter, values: rs.values })
        }
    };

    let cfg = ExperimentConfig { family, n_qubits, schedule, cuts, sweep };
    check_shape(&cfg)?;
    Ok(cfg)
}

/// Cross-field checks: schedule length, cut masks and the size of an
/// exhaustive cut list, for every size the config can reach.
fn check_shape(cfg: &ExperimentConfig) -> Result<(), ConfigError> {
    let sizes: Vec<usize> = match &cfg.sweep {
        Some(Sweep { parameter: SweepParameter::NQubits, values }) => values.iter().map(|&v| v as usize).collect(),
        _ => vec![cfg.n_qubits],
    };
    if let ScheduleSpec::PerQubit(lists) = &cfg.schedule {
        if cfg.sweep.is_some() {
            return Err(ConfigError::field("sweep", "a sweep needs the homogeneous schedule form (K, lambda, phi)"));
        }
        if lists.len() != cfg.n_qubits {
            return Err(ConfigError::field(
                "schedule.per_qubit",
                format!("has {} lists but n_qubits = {}", lists.len(), cfg.n_qubits),
            ));
        }
    }
    for n in sizes {
        match &cfg.cuts {
            CutSelection::All if n > MAX_ALL_CUTS_QUBITS => return Err(ConfigError::AllCutsTooLarge { n }),
            CutSelection::All => {}
            CutSelection::Masks(masks) => {
                for &m in masks {
                    BipartiteCut::from_label_mask(n, m)
                        .map_err(|e| ConfigError::field("cuts", format!("mask {m} for n_qubits = {n}: {e}")))?;
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = "family = \"ghz\"\nn_qubits = 3\n[schedule]\nK = 1\nlambda = 0.5\nphi = 0.0\n";

    #[test]
    fn minimal_config_defaults_to_all_cuts() {
        let cfg: ExperimentConfig = BASE.parse().unwrap();
        assert_eq!(cfg.cuts, CutSelection::All);
        assert_eq!(cfg.points().unwrap()[0].cuts.len(), 3);
    }

    #[test]
    fn unknown_field_is_rejected() {
        let err = format!("{BASE}colour = \"red\"\n").parse::<ExperimentConfig>().unwrap_err();
        assert!(matches!(err, ConfigError::Parse(ref m) if m.contains("colour")), "{err}");
    }

    #[test]
    fn negative_lambda_names_the_field() {
        let err = BASE.replace("0.5", "-0.2").parse::<ExperimentConfig>().unwrap_err();
        assert_eq!(err, ConfigError::field("schedule.lambda", "must lie in [0, 1], got -0.2"));
    }
}
