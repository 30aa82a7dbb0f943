//! Closed-form partial-transpose negativities of the dephased families.

use crate::channel::AggregateDephasing;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::states::FamilyKind;

use super::cuts::BipartiteCut;
use super::oracle::NegativityReport;

/// Which oracle quantity a closed form predicts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaTarget {
    /// The smallest partial-transpose eigenvalue (a non-positive number).
    MinEigenvalue,
    /// The sum of magnitudes of the negative eigenvalues.
    NegativitySum,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedForm<T: Real> {
    pub name: &'static str,
    pub value: T,
    pub target: FormulaTarget,
}

impl<T: Real> ClosedForm<T> {
    /// The prediction on the eigenvalue scale: non-positive, comparable to
    /// `min_eigenvalue` for eigenvalue formulas and to `-negativity_sum`
    /// for negativity formulas.
    pub fn signed(&self) -> T {
        match self.target {
            FormulaTarget::MinEigenvalue => self.value,
            FormulaTarget::NegativitySum => -self.value,
        }
    }

    /// Distance between the prediction and the oracle quantity it targets.
    pub fn error_against(&self, report: &NegativityReport<T>) -> T {
        match self.target {
            FormulaTarget::MinEigenvalue => (report.min_eigenvalue - self.value).abs(),
            FormulaTarget::NegativitySum => (report.negativity_sum - self.value).abs(),
        }
    }
}

fn check_size<T: Real>(agg: &AggregateDephasing<T>, cut: &BipartiteCut) -> Result<()> {
    if agg.n_qubits() != cut.n_qubits() {
        Err(Error::DimensionMismatch { expected: cut.n_qubits(), got: agg.n_qubits() })
    } else {
        Ok(())
    }
}

/// GHZ: the single negative eigenvalue `−½ Πγᵢ`, identical for every cut.
pub fn ghz_negativity_formula<T: Real>(agg: &AggregateDephasing<T>) -> T {
    -T::lit(0.5) * agg.gamma().iter().fold(T::one(), |p, &g| p * g)
}

/// W: `−(1/N) √((Σ_{P₁} γᵢ²)(Σ_{P₂} γᵢ²))`.
pub fn w_negativity_formula<T: Real>(agg: &AggregateDephasing<T>, cut: &BipartiteCut) -> Result<T> {
    check_size(agg, cut)?;
    let g = agg.gamma();
    let side = |q: usize| g[q - 1] * g[q - 1];
    let s1: T = cut.p1().members().map(side).sum();
    let s2: T = cut.p2().members().map(side).sum();
    Ok(-(s1 * s2).sqrt() / T::lit(cut.n_qubits() as f64))
}

/// `(γᵢγⱼ + γᵢ + γⱼ − 1)/4`
pub fn eta_pair<T: Real>(gi: T, gj: T) -> T {
    (gi * gj + gi + gj - T::one()) / T::lit(4.0)
}

/// `[(1 + γ₁)γ₂(1 + γ₃) − (1 − γ₁)(1 − γ₃)]/8`
pub fn eta_triple<T: Real>(g1: T, g2: T, g3: T) -> T {
    let one = T::one();
    ((one + g1) * g2 * (one + g3) - (one - g1) * (one - g3)) / T::lit(8.0)
}

/// Linear cluster negativity for two or three qubits.
///
/// Returns the (non-negative) negativity: the sum of magnitudes of the
/// negative partial-transpose eigenvalues. For the end cuts of the
/// three-qubit chain the spectrum can carry two negative eigenvalues, so
/// this is not in general the magnitude of the smallest one.
pub fn cluster_negativity_formula<T: Real>(agg: &AggregateDephasing<T>, cut: &BipartiteCut) -> Result<T> {
    check_size(agg, cut)?;
    let g = agg.gamma();
    let zero = T::zero();
    match (cut.n_qubits(), cut.bitmask()) {
        (2, _) => Ok(eta_pair(g[0], g[1]).max(zero)),
        (3, 0b001) => Ok(eta_pair(g[0], g[1]).max(zero)),
        (3, 0b011) => Ok(eta_pair(g[1], g[2]).max(zero)),
        (3, 0b101) => Ok(eta_pair(g[0], g[1])
            .max(eta_pair(g[1], g[2]))
            .max(eta_triple(g[0], g[1], g[2]))
            .max(zero)),
        (n, _) => Err(Error::FormulaUnavailable(format!(
            "cluster closed forms cover 2 or 3 qubits, not {n}"
        ))),
    }
}

/// The closed form matching a family and cut, when one exists.
pub fn closed_form<T: Real>(
    kind: FamilyKind,
    agg: &AggregateDephasing<T>,
    cut: &BipartiteCut,
) -> Result<Option<ClosedForm<T>>> {
    check_size(agg, cut)?;
    Ok(match kind {
        FamilyKind::Ghz => Some(ClosedForm {
            name: "ghz",
            value: ghz_negativity_formula(agg),
            target: FormulaTarget::MinEigenvalue,
        }),
        FamilyKind::W => Some(ClosedForm {
            name: "w",
            value: w_negativity_formula(agg, cut)?,
            target: FormulaTarget::MinEigenvalue,
        }),
        FamilyKind::LinearCluster => match cluster_negativity_formula(agg, cut) {
            Ok(value) => Some(ClosedForm { name: "cluster", value, target: FormulaTarget::NegativitySum }),
            Err(Error::FormulaUnavailable(_)) => None,
            Err(e) => return Err(e),
        },
    })
}
