//! Seeded invariant suite for the linear algebra, the channel and the
//! entanglement analysis. Each check reports the worst deviation it saw so
//! that a failing run says by how much.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::channel::{
    apply_dephasing, apply_microscopic_collision, x_expectation, AggregateDephasing, CollisionSchedule,
};
use crate::density::DensityMatrix;
use crate::eigen::hermitian_eigenvalues;
use crate::entanglement::{
    analyze, critical_gamma, enumerate_cuts, negativity_oracle, BipartiteCut,
};
use crate::error::Result;
use crate::matrix::ComplexMatrix;
use crate::qubits::QubitSubset;
use crate::sampling::{self, SeededRng};
use crate::states::{FamilyKind, StateFamily};

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub worst: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub note: Option<String>,
}

impl fmt::Display for PropertyOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<40} cases={:<6} worst={:.3e} tol={:.1e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.cases,
            self.worst,
            self.tolerance
        )?;
        if let Some(note) = &self.note {
            write!(f, " ({note})")?;
        }
        Ok(())
    }
}

/// Tracks the worst error over a batch of cases.
struct Probe {
    name: &'static str,
    tolerance: f64,
    cases: usize,
    worst: f64,
    failed: bool,
    note: Option<String>,
}

impl Probe {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self { name, tolerance, cases: 0, worst: 0.0, failed: false, note: None }
    }

    /// Records an error that must stay within tolerance.
    fn error(&mut self, err: f64) {
        self.cases += 1;
        if err.is_nan() || err > self.tolerance {
            self.failed = true;
        }
        if err.is_nan() || err > self.worst {
            self.worst = err;
        }
    }

    /// Records a boolean outcome; `margin` is reported as the error.
    fn holds(&mut self, ok: bool, margin: f64) {
        self.cases += 1;
        if !ok {
            self.failed = true;
            self.worst = self.worst.max(margin.abs());
        }
    }

    fn finish(self) -> PropertyOutcome {
        PropertyOutcome {
            name: self.name,
            cases: self.cases,
            worst: self.worst,
            tolerance: self.tolerance,
            passed: !self.failed && self.cases > 0,
            note: self.note,
        }
    }
}

/// How much work each check does.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub max_n: usize,
    pub seed: u64,
    /// Random cases per channel property.
    pub channel_cases: usize,
    /// Random micro-collision cases.
    pub micro_cases: usize,
    /// Random schedules per size for the closed-form comparison.
    pub schedules_per_n: usize,
}

impl SuiteConfig {
    pub fn new(max_n: usize, seed: u64) -> Self {
        Self { max_n, seed, channel_cases: 500, micro_cases: 100, schedules_per_n: 20 }
    }

    fn rng(&self, salt: u64) -> SeededRng {
        sampling::seeded(self.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }

    /// Upper size for checks that solve dense random spectra.
    fn dense_n(&self) -> usize {
        self.max_n.min(6)
    }
}

type Check = fn(&SuiteConfig) -> Result<PropertyOutcome>;

const CHECKS: &[Check] = &[
    kron_associativity,
    dagger_involution,
    partial_trace_preserves_trace,
    partial_transpose_involution,
    eigenvalue_trace_and_products,
    partial_transpose_spectrum_bounds,
    dephasing_preserves_state,
    dephasing_composition,
    microscopic_matches_reduced,
    phase_irrelevance,
    ghz_monotonicity,
    formula_matches_oracle,
    ghz_cut_independence,
    w_weakest_link,
    strict_positivity_persistence,
    cluster_less_robust_than_ghz,
    ghz_slope_law,
];

/// Runs every check in a fixed order.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<PropertyOutcome>> {
    CHECKS.iter().map(|check| check(cfg)).collect()
}

fn random_proper_subset(n: usize, rng: &mut SeededRng) -> QubitSubset {
    let full = (1u64 << n) - 1;
    let mask = rng.gen_range(1..full);
    QubitSubset::from_label_mask(n, mask).expect("mask within range")
}

fn random_cut(n: usize, rng: &mut SeededRng) -> BipartiteCut {
    BipartiteCut::new(random_proper_subset(n, rng)).expect("proper subset")
}

pub fn kron_associativity(cfg: &SuiteConfig) -> Result<PropertyOutcome> {
    let mut p = Probe::new("kron associativity", 1e-14);
    let mut rng = cfg.rng(1);
    for case in 0..60 {
        let dims: Vec<usize> = (0..3).map(|_| rng.gen_range(1..=4)).collect();
        let integer = case % 2 == 0;
        let m: Vec<ComplexMatrix<f64>> = dims
            .iter()
            .map(|&d| {
                if integer {
                    sampling::random_integer_matrix(d, &mut rng)
                } else {
                    sampling::random_hermitian(d, &mut rng)
                }
            })
            .collect();
        let left = m[0].kron(&m[1])?.kron(&m[2])?;
        let right = m[0].kron(&m[1].kron(&m[2])?)?;
        let err = left.max_abs_diff(&right)?;
        p.error(if integer && err != 0.0 { f64::INFINITY } else { err });
    }
    Ok(p.finish())
}

pub fn dagger_involution(cfg: &SuiteConfig) -> Result<PropertyOutcome> {
    let mut p = Probe::new("dagger involution", 0.0);
    let mut rng = cfg.rng(2);
    for _ in 0..60 {
        let d = rng.gen_range(1..=8);
        let a = sampling::random_integer_matrix::<f64, _>(d, &mut rng);
        p.error(a.dagger().dagger().max_abs_diff(&a)?);
        let h = sampling::random_hermitian::<f64, _>(d, &mut rng);
        p.error(h.dagger().max_abs_diff(&h)?);
    }
    Ok(p.finish())
}

pub fn partial_trace_preserves_trace(cfg: &SuiteConfig) -> Result<PropertyOutcome> {
    let mut p = Probe::new("partial trace preserves trace", 1e-12);
    let mut rng = cfg.rng(3);
    for _ in 0..100 {
        let n = rng.gen_range(2..=cfg.dense_n());
        let rho = sampling::random_density::<f64, _>(n, rng.gen_range(1..=3), &mut rng);
        let traced = random_proper_subset(n, &mut rng);
        let red = rho.partial_trace(&traced)?;
        p.error((red.trace() - rho.trace()).norm());
    }
    Ok(p.finish())
}

pub fn partial_transpose_involution(cfg: &SuiteConfig) -> Result<PropertyOutcome> {
    let mut p = Probe::new("partial transpose involution", 1e-14);
    let mut rng = cfg.rng(4);
    for _ in 0..100 {
        let n = rng.gen_range(2..=cfg.dense_n());
        let rho = sampling::random_density::<f64, _>(n, 2, &mut rng);
        let s = random_proper_subset(n, &mut rng);
        let pt = rho.partial_transpose(&s)?;
        let twice = crate::density::partial_transpose_mask(&pt, s.index_mask());
        let err = twice
            .max_abs_diff(rho.matrix())?
            .max(pt.hermitian_deviation())
            .max((pt.trace() - rho.trace()).norm());
        p.error(err);
    }
    Ok(p.finish())
}

fn sorted_close(a: &mut [f64], b: &mut [f64]) -> f64 {
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn eigenvalue_trace_and_products(cfg: &SuiteConfig) -> Result<PropertyOutcome> {
    let mut p = Probe::new("eigenvalue sum and kron spectra", 1e-9);
    let mut rng = cfg.rng(5);
    for _ in 0..60 {
        let dim = rng.gen_range(1..=24);
        let h = sampling::random_hermitian::<f64, _>(dim, &mut rng);
        let ev = hermitian_eigenvalues(&h)?;
        let err = (ev.iter().sum::<f64>() - h.trace().re).abs() / dim as f64;
        p.error(err);

        let na = rng.gen_range(1..=3);
        let nb = rng.gen_range(1..=(cfg.dense_n() - na).max(1));
        let a = sampling::random_density::<f64, _>(na, 2, &mut rng);
        let b = sampling::random_density::<f64, _>(nb, 3, &mut rng);
        let ab = a.tensor(&b)?;
        let ea = hermitian_eigenvalues(a.matrix())?;
        let eb = hermitian_eigenvalues(b.matrix())?;
        let mut products: Vec<f64> = ea.iter().flat_map(|x| eb.iter().map(move |y| x * y)).collect();
        let mut eab = hermitian_eigenvalues(ab.matrix())?;
        p.error(sorted_close(&mut eab, &mut products));
    }
    Ok(p.finish())
}

fn family_states(max_n: usize) -> Vec<DensityMatrix<f64>> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        for kind in [FamilyKind::Ghz, FamilyKind::W, FamilyKind::LinearCluster] {
            out.push(StateFamily::new(kind, n).expect("n >= 2").density());
        }
    }
    out
}

pub fn partial_transpose_spectrum_bounds(cfg: &SuiteConfig) -> Result<PropertyOutcome> {
    let mut p = Probe::new("partial transpose spectrum in [-1/2, 1]", 1e-9);
    let mut rng = cfg.rng(6);
    let mut states = family_states(cfg.dense_n());
    for _ in 0..40 {
        let n = rng.gen_range(2..=cfg.dense_n());
        states.push(sampling::random_density(n, rng.gen_range(1..=4), &mut rng));
    }
    for rho in &states {
        let n = rho.n_qubits();
        let dephased = apply_dephasing(rho, &sampling::random_aggregate(n, &mut rng))?;
        for r in [rho, &dephased] {
            let s = random_proper_subset(n, &mut rng);
            let ev = hermitian_eigenvalues(&r.partial_transpose(&s)?)?;
            let below = (-0.5 - ev[0]).max(0.0);
            let above = (ev[ev.len() - 1] - 1.0).max(0.0);
            p.error(below.max(above));
        }
    }
    Ok(p.finish())
}

fn random_channel_input(rng: &mut SeededRng, max_n: usize) -> DensityMatrix<f64> {
    let n = rng.gen_range(1..=max_n.min(5));
    if n >= 2 && rng.gen_bool(0.3) {
        let kind = *[FamilyKind::Ghz, FamilyKind::W, FamilyKind::LinearCluster].choose(rng).unwrap();
        StateFamily::new(kind, n).expect("n >= 2").density()
    } else {
        sampling::random_density(n, rng.gen_range(1..=3), rng)
    }
}

pub fn dephasing_preserves_state(cfg: &SuiteConfig) -> Result<PropertyOutcome> {
    // trace must be untouched; Hermiticity within 1e-14; PSD within 1e-10
    let mut p = Probe::new("dephasing preserves trace/herm/psd", 1e-14);
    let mut rng = cfg.rng(7);
    let mut worst_psd = 0.0f64;
    for _ in 0..cfg.channel_cases {
        let rho = random_channel_input(&mut rng, cfg.max_n);
        let agg = sampling::random_aggregate(rho.n_qubits(), &mut rng);
        let out = apply_dephasing(&rho, &agg)?;
        let diag_changed = rho.matrix().diagonal() != out.matrix().diagonal();
        let herm = out.matrix().hermitian_deviation();
        let min = hermitian_eigenvalues(out.matrix())?[0];
        worst_psd = worst_psd.max(-min);
        let ok = !diag_changed && herm <= 1e-14 && min >= -1e-10;
        p.holds(ok, if diag_changed { f64::INFINITY } else { herm.max(-min) });
        if herm > p.worst {
            p.worst = herm;
        }
    }
    p.note = Some(format!("worst negative eigenvalue {:.1e}", worst_psd));
    Ok(p.finish())
}

pub fn dephasing_composition(cfg: &SuiteConfig) -> Result<PropertyOutcome> {
    let mut p = Probe::new("dephasing composition law", 1e-12);
    let mut rng = cfg.rng(8);
    for _ in 0..cfg.channel_cases {
        let rho = random_channel_input(&mut rng, cfg.max_n);
        let n = rho.n_qubits();
        let a = sampling::random_aggregate(n, &mut rng);
        let b = sampling::random_aggregate(n, &mut rng);
        let twice = apply_dephasing(&apply_dephasing(&rho, &a)?, &b)?;
        let once = apply_dephasing(&rho, &a.compose(&b)?)?;
        p.error(twice.matrix().max_abs_diff(once.matrix())?);

        // the same law at the schedule level
        let s1 = sampling::random_schedule::<f64, _>(n, 3, &mut rng);
        let s2 = sampling::random_schedule::<f64, _>(n, 3, &mut rng);
        let joined = CollisionSchedule::from_lists(
            (1..=n)
                .map(|q| s1.collisions(q).iter().chain(s2.collisions(q)).copied().collect())
                .collect(),
        );
        let stepwise = s1.aggregate().compose(&s2.aggregate())?;
        let direct = joined.aggregate();
        let err = apply_dephasing(&rho, &stepwise)?.matrix().max_abs_diff(apply_dephasing(&rho, &direct)?.matrix())?;
        p.error(err);
    }
    Ok(p.finish())
}

pub fn microscopic_matches_reduced(cfg: &SuiteConfig) -> Result<PropertyOutcome> {
    let mut p = Probe::new("microscopic = reduced collision", 1e-10);
    let mut rng = cfg.rng(9);
    for case in 0..cfg.micro_cases {
        let n = if case % 4 == 3 { cfg.max_n.clamp(2, 4) } else { 3.min(cfg.max_n) };
        let rho = sampling::random_density::<f64, _>(n, rng.gen_range(1..=3), &mut rng);
        let spec = sampling::random_spec(&mut rng);
        let q = rng.gen_range(1..=n);
        let micro = apply_microscopic_collision(&rho, q, &spec)?;
        let params = x_expectation(&spec);
        let mut gamma = vec![1.0; n];
        let mut phase = vec![0.0; n];
        gamma[q - 1] = params.lambda();
        phase[q - 1] = params.phi();
        let reduced = apply_dephasing(&rho, &AggregateDephasing::new(gamma, phase)?)?;
        p.error(micro.matrix().max_abs_diff(reduced.matrix())?);
    }
    Ok(p.finish())
}

pub fn phase_irrelevance(cfg: &SuiteConfig) -> Result<PropertyOutcome> {
    let mut p = Probe::new("phases do not change negativity", 1e-9);
    let mut rng = cfg.rng(10);
    let mut states = family_states(cfg.max_n.min(5));
    for _ in 0..20 {
        let n = rng.gen_range(2..=cfg.max_n.min(5));
        states.push(sampling::random_density(n, rng.gen_range(1..=2), &mut rng));
    }
    for rho in &states {
        let n = rho.n_qubits();
        let agg = sampling::random_aggregate(n, &mut rng);
        let with = apply_dephasing(rho, &agg)?;
        let without = apply_dephasing(rho, &agg.without_phases())?;
        let cut = random_cut(n, &mut rng);
        let a = negativity_oracle(&with, &cut)?;
        let b = negativity_oracle(&without, &cut)?;
        p.error((a.negativity_sum - b.negativity_sum).abs().max((a.min_eigenvalue - b.min_eigenvalue).abs()));
    }
    Ok(p.finish())
}

pub fn ghz_monotonicity(cfg: &SuiteConfig) -> Result<PropertyOutcome> {
    let mut p = Probe::new("ghz negativity monotone in gamma", 1e-9);
    let mut rng = cfg.rng(11);
    for _ in 0..40 {
        let n = rng.gen_range(2..=cfg.max_n);
        let rho = StateFamily::new(FamilyKind::Ghz, n)?.density::<f64>();
        let hi = sampling::random_aggregate(n, &mut rng);
        let lo_g: Vec<f64> = hi.gamma().iter().map(|g| g * rng.gen_range(0.0..=1.0)).collect();
        let lo = AggregateDephasing::new(lo_g, hi.phase().to_vec())?;
        let cut = random_cut(n, &mut rng);
        let a = negativity_oracle(&apply_dephasing(&rho, &lo)?, &cut)?.negativity_sum;
        let b = negativity_oracle(&apply_dephasing(&rho, &hi)?, &cut)?.negativity_sum;
        p.error((a - b).max(0.0));
    }
    Ok(p.finish())
}

/// GHZ and W over random schedules at every size up to `max_n`, cluster
/// over the 2- and 3-qubit γ grids.
pub fn formula_matches_oracle(cfg: &SuiteConfig) -> Result<PropertyOutcome> {
    let mut p = Probe::new("closed forms match oracle", 1e-8);
    let mut rng = cfg.rng(12);
    for n in 2..=cfg.max_n {
        let cuts = enumerate_cuts(n)?;
        for kind in [FamilyKind::Ghz, FamilyKind::W] {
            let fam = StateFamily::new(kind, n)?;
            for _ in 0..cfg.schedules_per_n {
                let agg = sampling::random_schedule::<f64, _>(n, 3, &mut rng).aggregate();
                for r in analyze(&fam, &agg, &cuts)? {
                    p.error(r.formula_error().unwrap_or(f64::INFINITY));
                }
            }
        }
    }
    let grid: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
    for n in 2..=cfg.max_n.min(3) {
        let fam = StateFamily::new(FamilyKind::LinearCluster, n)?;
        let cuts = enumerate_cuts(n)?;
        let mut points: Vec<Vec<f64>> = grid.iter().map(|&a| vec![a]).collect();
        for _ in 1..n {
            points = points
                .iter()
                .flat_map(|pt| grid.iter().map(move |&g| [pt.as_slice(), &[g]].concat()))
                .collect();
        }
        for g in points {
            let agg = AggregateDephasing::from_gammas(g)?;
            for r in analyze(&fam, &agg, &cuts)? {
                p.error(r.formula_error().unwrap_or(f64::INFINITY));
            }
        }
    }
    Ok(p.finish())
}

pub fn ghz_cut_independence(cfg: &SuiteConfig) -> Result<PropertyOutcome> {
    let mut p = Probe::new("ghz min eigenvalue cut-independent", 1e-9);
    let mut rng = cfg.rng(13);
    for n in 2..=cfg.max_n {
        let fam = StateFamily::new(FamilyKind::Ghz, n)?;
        let cuts = enumerate_cuts(n)?;
        for _ in 0..5 {
            let agg = sampling::random_aggregate(n, &mut rng);
            let reports = analyze(&fam, &agg, &cuts)?;
            let lo = reports.iter().map(|r| r.min_eigenvalue).fold(f64::INFINITY, f64::min);
            let hi = reports.iter().map(|r| r.min_eigenvalue).fold(f64::NEG_INFINITY, f64::max);
            p.error(hi - lo);
        }
    }
    Ok(p.finish())
}

/// Under homogeneous dephasing the least entangled W cut is the one that
/// minimizes `√(k(N−k))/N`, i.e. a single qubit against the rest.
pub fn w_weakest_link(cfg: &SuiteConfig) -> Result<PropertyOutcome> {
    let mut p = Probe::new("w weakest cut matches formula", 1e-9);
    let mut rng = cfg.rng(14);
    for n in 2..=cfg.max_n {
        let fam = StateFamily::new(FamilyKind::W, n)?;
        let cuts = enumerate_cuts(n)?;
        for _ in 0..3 {
            let g: f64 = rng.gen_range(0.05..=1.0);
            let agg = AggregateDephasing::homogeneous(n, g)?;
            let weakest = analyze(&fam, &agg, &cuts)?
                .iter()
                .map(|r| r.min_eigenvalue.abs())
                .fold(f64::INFINITY, f64::min);
            let predicted = (1..n)
                .map(|k| ((k * (n - k)) as f64).sqrt() / n as f64 * g * g)
                .fold(f64::INFINITY, f64::min);
            p.error((weakest - predicted).abs());
        }
    }
    Ok(p.finish())
}

pub fn strict_positivity_persistence(cfg: &SuiteConfig) -> Result<PropertyOutcome> {
    let mut p = Probe::new("0<lambda<1 keeps ghz and w npt", 0.0);
    let mut rng = cfg.rng(15);
    for n in 2..=cfg.max_n.min(7) {
        let cuts = enumerate_cuts(n)?;
        for kind in [FamilyKind::Ghz, FamilyKind::W] {
            let fam = StateFamily::new(kind, n)?;
            for _ in 0..4 {
                let agg = sampling::random_schedule_in::<f64, _>(n, 2, 0.5, 0.99, &mut rng).aggregate();
                for r in analyze(&fam, &agg, &cuts)? {
                    p.holds(r.min_eigenvalue < 0.0, r.min_eigenvalue);
                }
            }
        }
    }
    Ok(p.finish())
}

/// Two qubits: the dephased cluster is strictly less entangled than GHZ at
/// every γ in (√2−1, 1). Three qubits: below the middle-cut threshold the
/// cluster has a PPT cut while GHZ stays NPT on every cut.
pub fn cluster_less_robust_than_ghz(cfg: &SuiteConfig) -> Result<PropertyOutcome> {
    let mut p = Probe::new("cluster less robust than ghz", 0.0);
    let crit2 = 2f64.sqrt() - 1.0;
    let grid: Vec<f64> = (1..20).map(|i| i as f64 * 0.05).collect();
    let cl2 = StateFamily::new(FamilyKind::LinearCluster, 2)?;
    let ghz2 = StateFamily::new(FamilyKind::Ghz, 2)?;
    let cuts2 = enumerate_cuts(2)?;
    for &g in grid.iter().filter(|&&g| g > crit2) {
        let agg = AggregateDephasing::homogeneous(2, g)?;
        let c = analyze(&cl2, &agg, &cuts2)?[0].negativity_sum;
        let h = analyze(&ghz2, &agg, &cuts2)?[0].negativity_sum;
        p.holds(c < h, c - h);
    }
    if cfg.max_n >= 3 {
        let cl3 = StateFamily::new(FamilyKind::LinearCluster, 3)?;
        let ghz3 = StateFamily::new(FamilyKind::Ghz, 3)?;
        let cuts3 = enumerate_cuts(3)?;
        let middle = BipartiteCut::from_members(3, [1, 3])?;
        let crit3 = critical_gamma(&cl3, &middle, 0.0, 1.0)?;
        for &g in grid.iter().filter(|&&g| g < crit3) {
            let agg = AggregateDephasing::homogeneous(3, g)?;
            let cluster_ppt = analyze(&cl3, &agg, &cuts3)?.iter().any(|r| !r.is_npt());
            let ghz_npt = analyze(&ghz3, &agg, &cuts3)?.iter().all(|r| r.is_npt());
            p.holds(cluster_ppt && ghz_npt, 1.0);
        }
    }
    Ok(p.finish())
}

/// `ln|min eigenvalue|` of homogeneously dephased GHZ_N is affine in N with
/// slope `K ln λ`.
pub fn ghz_slope_law(cfg: &SuiteConfig) -> Result<PropertyOutcome> {
    let mut p = Probe::new("ghz log-negativity slope", 1e-6);
    let lambda: f64 = 0.9;
    for k in 1..=3usize {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for n in 2..=cfg.max_n.max(3) {
            let fam = StateFamily::new(FamilyKind::Ghz, n)?;
            let agg = CollisionSchedule::homogeneous(n, k, lambda, 0.0)?.aggregate();
            let cut = BipartiteCut::from_members(n, [1])?;
            let r = &analyze(&fam, &agg, &[cut])?[0];
            xs.push(n as f64);
            ys.push(r.min_eigenvalue.abs().ln());
        }
        let (slope, _intercept, residual) = least_squares(&xs, &ys);
        let want = k as f64 * lambda.ln();
        p.error(((slope - want) / want).abs());
        if residual > 1e-9 {
            p.failed = true;
            p.worst = p.worst.max(residual);
        }
    }
    Ok(p.finish())
}

/// Ordinary least squares `y = a x + b`; returns `(a, b, max |residual|)`.
pub fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - (slope * x + intercept)).abs())
        .fold(0.0, f64::max);
    (slope, intercept, residual)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_squares_exact_line() {
        let xs = [1., 2., 3., 4.];
        let ys: Vec<f64> = xs.iter().map(|x| -0.3 * x + 2.0).collect();
        let (a, b, r) = least_squares(&xs, &ys);
        assert!((a + 0.3).abs() < 1e-14 && (b - 2.0).abs() < 1e-14 && r < 1e-14);
    }

    #[test]
    fn small_suite_passes() {
        let cfg = SuiteConfig { max_n: 3, seed: 7, channel_cases: 40, micro_cases: 10, schedules_per_n: 3 };
        for outcome in run_suite(&cfg).unwrap() {
            assert!(outcome.passed, "{outcome}");
        }
    }
}
