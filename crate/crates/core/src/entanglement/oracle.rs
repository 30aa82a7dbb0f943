use rayon::prelude::*;

use crate::density::DensityMatrix;
use crate::eigen::hermitian_eigenvalues_with;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tolerance::Tolerances;

use super::cuts::{enumerate_cuts, BipartiteCut};
use super::formulas::ClosedForm;

/// Partial-transpose spectrum summary for one cut.
#[derive(Debug, Clone, PartialEq)]
pub struct NegativityReport<T: Real> {
    pub cut: BipartiteCut,
    /// Smallest eigenvalue of `ρ^{T_{P₁}}`; values in `[−zero_eigenvalue, 0]`
    /// are reported as zero.
    pub min_eigenvalue: T,
    /// Σ|λ| over eigenvalues below `−zero_eigenvalue`.
    pub negativity_sum: T,
    /// Number of eigenvalues below `−zero_eigenvalue`.
    pub negative_count: usize,
    pub formula: Option<ClosedForm<T>>,
}

impl<T: Real> NegativityReport<T> {
    pub fn is_npt(&self) -> bool {
        self.negative_count > 0
    }

    pub fn formula_value(&self) -> Option<T> {
        self.formula.map(|f| f.value)
    }

    pub fn formula_name(&self) -> Option<&'static str> {
        self.formula.map(|f| f.name)
    }

    /// Disagreement between the attached closed form and the oracle.
    pub fn formula_error(&self) -> Option<T> {
        self.formula.map(|f| f.error_against(self))
    }

    pub fn with_formula(mut self, formula: Option<ClosedForm<T>>) -> Self {
        self.formula = formula;
        self
    }
}

fn check_cut<T: Real>(rho: &DensityMatrix<T>, cut: &BipartiteCut) -> Result<()> {
    if cut.n_qubits() != rho.n_qubits() {
        Err(Error::DimensionMismatch { expected: rho.n_qubits(), got: cut.n_qubits() })
    } else {
        Ok(())
    }
}

/// Exact eigensolve of the partial transpose of `rho` across `cut`.
pub fn negativity_oracle<T: Real>(rho: &DensityMatrix<T>, cut: &BipartiteCut) -> Result<NegativityReport<T>> {
    negativity_oracle_with(rho, cut, &Tolerances::DEFAULT)
}

pub fn negativity_oracle_with<T: Real>(
    rho: &DensityMatrix<T>,
    cut: &BipartiteCut,
    tol: &Tolerances,
) -> Result<NegativityReport<T>> {
    check_cut(rho, cut)?;
    let raw = pt_min_eigenvalue_and_negatives(rho, cut, tol)?;
    Ok(NegativityReport {
        cut: cut.clone(),
        min_eigenvalue: raw.clamped_min,
        negativity_sum: raw.negativity_sum,
        negative_count: raw.negative_count,
        formula: None,
    })
}

pub(crate) struct PtSpectrum<T> {
    pub clamped_min: T,
    pub negativity_sum: T,
    pub negative_count: usize,
}

pub(crate) fn pt_min_eigenvalue_and_negatives<T: Real>(
    rho: &DensityMatrix<T>,
    cut: &BipartiteCut,
    tol: &Tolerances,
) -> Result<PtSpectrum<T>> {
    let pt = rho.partial_transpose(cut.p1())?;
    let ev = hermitian_eigenvalues_with(&pt, tol)?;
    let zero = T::tol(tol.zero_eigenvalue);
    let negatives = ev.iter().filter(|&&x| x < -zero);
    let negativity_sum = negatives.clone().fold(T::zero(), |s, &x| s - x);
    let negative_count = negatives.count();
    let raw_min = ev[0];
    let clamped_min = if raw_min < -zero { raw_min } else { raw_min.max(T::zero()) };
    Ok(PtSpectrum { clamped_min, negativity_sum, negative_count })
}

/// Oracle reports for `cuts`, in the order given. Cuts are evaluated in
/// parallel.
pub fn negativity_reports<T: Real>(
    rho: &DensityMatrix<T>,
    cuts: &[BipartiteCut],
) -> Result<Vec<NegativityReport<T>>> {
    cuts.par_iter().map(|c| negativity_oracle(rho, c)).collect()
}

/// Whether the state is NPT across every bipartition, the necessary
/// condition for N-party distillability.
#[derive(Debug, Clone, PartialEq)]
pub struct DistillabilityVerdict<T: Real> {
    pub all_cuts_npt: bool,
    pub ppt_cuts: Vec<BipartiteCut>,
    /// Cut whose partial transpose has the largest smallest eigenvalue.
    pub worst_cut: BipartiteCut,
    pub reports: Vec<NegativityReport<T>>,
}

pub fn distillability_check<T: Real>(rho: &DensityMatrix<T>) -> Result<DistillabilityVerdict<T>> {
    let cuts = enumerate_cuts(rho.n_qubits())?;
    let reports = negativity_reports(rho, &cuts)?;
    let ppt_cuts: Vec<BipartiteCut> = reports.iter().filter(|r| !r.is_npt()).map(|r| r.cut.clone()).collect();
    // First maximum in enumeration order.
    let worst = reports
        .iter()
        .fold(None::<&NegativityReport<T>>, |best, r| match best {
            Some(b) if b.min_eigenvalue >= r.min_eigenvalue => Some(b),
            _ => Some(r),
        })
        .expect("at least one cut");
    Ok(DistillabilityVerdict {
        all_cuts_npt: ppt_cuts.is_empty(),
        worst_cut: worst.cut.clone(),
        ppt_cuts,
        reports,
    })
}
