//! Acceptance run: one line per criterion, non-zero exit if any fails.
//!
//! Runs without the libtest harness so that every line is printed even
//! when everything passes.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use decohere_core::properties::least_squares;
use decohere_core::sampling::{self, random_density, random_schedule, random_spec};
use decohere_core::{
    analyze, apply_dephasing, apply_microscopic_collision, critical_gamma, distillability_check, enumerate_cuts,
    x_expectation, Aggregate64, BipartiteCut, CollisionParams, CollisionSchedule, Complex,
    Density64, FamilyKind, Matrix64, QubitSubset, Schedule64, Spec64, State64, StateFamily,
};
use rand::Rng;

struct Verdict {
    passed: bool,
    detail: String,
}

impl Verdict {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Self { passed, detail: detail.into() }
    }
}

fn fam(kind: FamilyKind, n: usize) -> StateFamily {
    StateFamily::new(kind, n).unwrap()
}

/// GHZ min eigenvalue equals −½Πγ for random schedules, n = 2..8, all cuts.
fn criterion_1() -> Verdict {
    let start = Instant::now();
    let mut rng = sampling::seeded(1);
    let mut worst = 0.0f64;
    let mut cases = 0;
    for n in 2..=8 {
        let ghz = fam(FamilyKind::Ghz, n);
        let cuts = enumerate_cuts(n).unwrap();
        for _ in 0..200 {
            let sched: Schedule64 = random_schedule(n, 3, &mut rng);
            let agg = sched.aggregate();
            let want = -0.5 * agg.gamma().iter().product::<f64>();
            for r in analyze(&ghz, &agg, &cuts).unwrap() {
                worst = worst.max((r.min_eigenvalue - want).abs());
                cases += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    Verdict::new(
        worst <= 1e-8 && elapsed < Duration::from_secs(60),
        format!("{cases} cut evaluations, worst |error| {worst:.2e} (tol 1e-8), {:.1} s (limit 60 s)", elapsed.as_secs_f64()),
    )
}

/// ln|min eigenvalue| against N has slope K ln 0.9.
fn criterion_2() -> Verdict {
    let lambda: f64 = 0.9;
    let mut worst = 0.0f64;
    for k in 1..=3 {
        let (mut xs, mut ys) = (Vec::new(), Vec::new());
        for n in 2..=8 {
            let agg = CollisionSchedule::homogeneous(n, k, lambda, 0.0).unwrap().aggregate();
            let cut = BipartiteCut::from_members(n, [1]).unwrap();
            let r = &analyze(&fam(FamilyKind::Ghz, n), &agg, &[cut]).unwrap()[0];
            xs.push(n as f64);
            ys.push(r.min_eigenvalue.abs().ln());
        }
        let (slope, _, _) = least_squares(&xs, &ys);
        let want = k as f64 * lambda.ln();
        worst = worst.max(((slope - want) / want).abs());
    }
    Verdict::new(worst <= 1e-6, format!("worst relative slope error {worst:.2e} (tol 1e-6)"))
}

/// One λ = 0 collision on any qubit makes every GHZ cut PPT.
fn criterion_3() -> Verdict {
    let mut rng = sampling::seeded(3);
    let mut worst = f64::INFINITY;
    let mut cases = 0;
    for n in 2..=6 {
        let ghz = fam(FamilyKind::Ghz, n);
        let cuts = enumerate_cuts(n).unwrap();
        for q in 1..=n {
            for _ in 0..5 {
                let base: Schedule64 = random_schedule(n, 3, &mut rng);
                let mut lists: Vec<Vec<_>> = (1..=n).map(|i| base.collisions(i).to_vec()).collect();
                let slot = rng.gen_range(0..=lists[q - 1].len());
                lists[q - 1].insert(slot, CollisionParams::new(0.0, rng.gen_range(0.0..6.0)).unwrap());
                let agg = CollisionSchedule::from_lists(lists).aggregate();
                for r in analyze(&ghz, &agg, &cuts).unwrap() {
                    worst = worst.min(r.min_eigenvalue);
                    cases += 1;
                }
            }
        }
    }
    Verdict::new(worst >= -1e-10, format!("{cases} cuts, lowest PT eigenvalue {worst:.2e} (must be >= -1e-10)"))
}

/// W closed form per cut for homogeneous and single-qubit schedules, and
/// the size-independent balanced-cut value.
fn criterion_4() -> Verdict {
    let mut worst = 0.0f64;
    let mut cases = 0;
    for n in 2..=7 {
        let w = fam(FamilyKind::W, n);
        let cuts = enumerate_cuts(n).unwrap();
        let mut schedules = Vec::new();
        for &(k, lambda) in &[(1, 0.9), (2, 0.7), (3, 0.5), (1, 0.0), (4, 1.0)] {
            schedules.push(CollisionSchedule::homogeneous(n, k, lambda, 0.4).unwrap());
            for q in 1..=n {
                schedules.push(CollisionSchedule::single_qubit(n, q, k, lambda).unwrap());
            }
        }
        for s in &schedules {
            for r in analyze(&w, &s.aggregate(), &cuts).unwrap() {
                worst = worst.max(r.formula_error().unwrap());
                cases += 1;
            }
        }
    }
    let mut balanced = 0.0f64;
    for n in [4, 6] {
        let cut = BipartiteCut::from_members(n, 1..=n / 2).unwrap();
        for &(k, lambda) in &[(1usize, 0.9f64), (2, 0.8), (3, 0.6), (1, 0.3)] {
            let agg = CollisionSchedule::homogeneous(n, k, lambda, 0.0).unwrap().aggregate();
            let r = &analyze(&fam(FamilyKind::W, n), &agg, std::slice::from_ref(&cut)).unwrap()[0];
            balanced = balanced.max((r.min_eigenvalue + 0.5 * lambda.powi(2 * k as i32)).abs());
        }
    }
    Verdict::new(
        worst <= 1e-8 && balanced <= 1e-10,
        format!("{cases} cuts, worst formula error {worst:.2e} (tol 1e-8); balanced-cut error {balanced:.2e} (tol 1e-10)"),
    )
}

/// W with γ₁ = 0 has a PPT cut but its reduction to qubits 2..n is NPT on
/// every cut.
fn criterion_5() -> Verdict {
    let mut rng = sampling::seeded(5);
    let mut failures = Vec::new();
    for n in 3..=6 {
        for trial in 0..4 {
            let mut g = vec![1.0; n];
            if trial > 0 {
                g.iter_mut().for_each(|x| *x = rng.gen_range(0.3..=1.0));
            }
            g[0] = 0.0;
            let rho = apply_dephasing(&fam(FamilyKind::W, n).density(), &Aggregate64::from_gammas(g).unwrap()).unwrap();
            let full = distillability_check(&rho).unwrap();
            let rest = rho.partial_trace(&QubitSubset::new(n, [1]).unwrap()).unwrap();
            let reduced = distillability_check(&rest).unwrap();
            if full.ppt_cuts.is_empty() || !reduced.all_cuts_npt {
                failures.push(format!("n={n} trial={trial}"));
            }
        }
    }
    Verdict::new(failures.is_empty(), format!("16 states, failures: {failures:?}"))
}

/// Cluster thresholds from bisection on the exact spectrum.
fn criterion_6() -> Verdict {
    let c2 = critical_gamma(&fam(FamilyKind::LinearCluster, 2), &BipartiteCut::from_members(2, [1]).unwrap(), 0.0, 1.0)
        .unwrap();
    let middle = BipartiteCut::from_members(3, [1, 3]).unwrap();
    let c3: f64 = critical_gamma(&fam(FamilyKind::LinearCluster, 3), &middle, 0.0, 1.0).unwrap();
    let e2 = (c2 - (2f64.sqrt() - 1.0)).abs();
    let e3 = (c3 - 0.295598).abs();
    let cubic = (c3.powi(3) + c3 * c3 + 3.0 * c3 - 1.0).abs();
    Verdict::new(
        e2 <= 1e-7 && e3 <= 5e-6 && cubic <= 1e-8,
        format!(
            "n=2 {c2:.10} (err {e2:.1e}, tol 1e-7); n=3 {c3:.10} (err {e3:.1e}, tol 5e-6); cubic residual {cubic:.1e} (tol 1e-8)"
        ),
    )
}

fn cluster_grid(n: usize) -> Vec<Vec<f64>> {
    let axis: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
    let mut pts: Vec<Vec<f64>> = axis.iter().map(|&a| vec![a]).collect();
    for _ in 1..n {
        pts = pts.iter().flat_map(|p| axis.iter().map(move |&a| [p.as_slice(), &[a]].concat())).collect();
    }
    pts
}

/// Cluster formulas against the magnitude of the smallest PT eigenvalue
/// (its negative part, so PPT points count as zero).
///
/// Homogeneous grid points decide the verdict; inhomogeneous mismatches
/// are only counted. The same grid is also compared against the sum of
/// negative-eigenvalue magnitudes, reported on a separate line.
fn criterion_7() -> (Verdict, Verdict) {
    let mut homo_worst = 0.0f64;
    let mut homo_fail = Vec::new();
    let mut inhomo_mismatch = 0;
    let mut points = 0;
    let mut sum_worst = 0.0f64;
    for n in [2, 3] {
        let cl = fam(FamilyKind::LinearCluster, n);
        let cuts = enumerate_cuts(n).unwrap();
        for g in cluster_grid(n) {
            let homogeneous = g.iter().all(|&x| x == g[0]);
            let agg = Aggregate64::from_gammas(g.clone()).unwrap();
            for r in analyze(&cl, &agg, &cuts).unwrap() {
                points += 1;
                let formula = r.formula_value().unwrap();
                // the negative part of the smallest eigenvalue; PPT points give zero
                let magnitude = (-r.min_eigenvalue).max(0.0);
                let err = (magnitude - formula).abs();
                sum_worst = sum_worst.max((r.negativity_sum - formula).abs());
                if homogeneous {
                    homo_worst = homo_worst.max(err);
                    if err > 1e-8 {
                        homo_fail.push(format!("n={n} g={} cut {}", g[0], r.cut));
                    }
                } else if err > 1e-8 {
                    inhomo_mismatch += 1;
                }
            }
        }
    }
    let shown: Vec<_> = homo_fail.iter().take(6).cloned().collect();
    let eig = Verdict::new(
        homo_fail.is_empty(),
        format!(
            "max(-min eigenvalue,0) vs max(eta,0): homogeneous worst {homo_worst:.3e} (tol 1e-8), {} homogeneous failures {shown:?}; {inhomo_mismatch} inhomogeneous mismatches logged",
            homo_fail.len()
        ),
    );
    let sum = Verdict::new(
        sum_worst <= 1e-8,
        format!("negativity sum vs max(eta,0): {points} cut evaluations, worst {sum_worst:.2e} (tol 1e-8)"),
    );
    (eig, sum)
}

fn pauli_spec(nx: f64, ny: f64, nz: f64) -> Spec64 {
    // V⁰ = I and V¹ = n·σ, so X = n·σ.
    let psi = State64::qubit(Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)).unwrap();
    let phi = State64::qubit(Complex::new(nx, -ny), Complex::new(-nz, 0.0)).unwrap();
    let mixed = Density64::new(Matrix64::from_real_rows(&[&[0.5, 0.0], &[0.0, 0.5]]).unwrap()).unwrap();
    Spec64::new(psi, 0.0, phi, 0.0, mixed).unwrap()
}

/// Microscopic collision against the reduced channel, and the Pauli case.
fn criterion_8() -> Verdict {
    let mut rng = sampling::seeded(8);
    let mut worst = 0.0f64;
    for case in 0..100 {
        let rho: Density64 = if case % 10 == 0 {
            fam([FamilyKind::Ghz, FamilyKind::W, FamilyKind::LinearCluster][case / 10 % 3], 3).density()
        } else {
            random_density(3, rng.gen_range(1..=3), &mut rng)
        };
        let spec: Spec64 = random_spec(&mut rng);
        let q = rng.gen_range(1..=3);
        let micro = apply_microscopic_collision(&rho, q, &spec).unwrap();
        let p = x_expectation(&spec);
        let mut sched = CollisionSchedule::empty(3);
        sched.push(q, p).unwrap();
        let reduced = apply_dephasing(&rho, &sched.aggregate()).unwrap();
        worst = worst.max(micro.matrix().max_abs_diff(reduced.matrix()).unwrap());
    }
    let mut pauli = 0.0f64;
    let mut dirs = vec![(1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)];
    for _ in 0..20 {
        let v: [f64; 3] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        dirs.push((v[0] / norm, v[1] / norm, v[2] / norm));
    }
    for (x, y, z) in dirs {
        pauli = pauli.max(x_expectation(&pauli_spec(x, y, z)).lambda());
    }
    Verdict::new(
        worst <= 1e-10 && pauli <= 1e-12,
        format!("100 cases, worst entrywise {worst:.2e} (tol 1e-10); Pauli lambda max {pauli:.1e} (tol 1e-12)"),
    )
}

/// `decohere verify --max-n 5`, which includes the 500-case channel checks.
fn criterion_9() -> Verdict {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_decohere"))
        .args(["verify", "--max-n", "5", "--seed", "2024"])
        .output()
        .expect("run decohere");
    let elapsed = start.elapsed();
    let stdout = String::from_utf8_lossy(&out.stdout);
    let channel_lines: Vec<&str> = stdout
        .lines()
        .filter(|l| l.contains("dephasing preserves") || l.contains("composition"))
        .collect();
    let channel_ok = channel_lines.len() == 2 && channel_lines.iter().all(|l| l.starts_with("PASS"));
    Verdict::new(
        out.status.code() == Some(0) && channel_ok && elapsed < Duration::from_secs(300),
        format!(
            "exit {:?} in {:.1} s (limit 300 s); channel checks: {}",
            out.status.code(),
            elapsed.as_secs_f64(),
            channel_lines.join(" | ")
        ),
    )
}

fn main() -> ExitCode {
    // `cargo test` passes harness flags such as --list; honour --list so
    // test discovery does not run the whole suite.
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let (c7, c7_sum) = criterion_7();
    let results = [
        ("1", "GHZ closed form", criterion_1()),
        ("2", "GHZ homogeneous scaling", criterion_2()),
        ("3", "GHZ fragility", criterion_3()),
        ("4", "W closed form per cut", criterion_4()),
        ("5", "W residual entanglement", criterion_5()),
        ("6", "cluster thresholds", criterion_6()),
        ("7", "cluster formulas vs min eigenvalue", c7),
        ("7b", "cluster formulas vs negativity sum", c7_sum),
        ("8", "microscopic/reduced equivalence", criterion_8()),
        ("9", "channel sanity via verify", criterion_9()),
    ];
    let mut failed = 0;
    for (id, name, v) in &results {
        println!("criterion {id:<3} {:<4} {name}: {}", if v.passed { "PASS" } else { "FAIL" }, v.detail);
        failed += usize::from(!v.passed);
    }
    println!("{} of {} acceptance checks passed", results.len() - failed, results.len());
    if failed > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
