use crate::channel::{apply_dephasing, AggregateDephasing};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::states::StateFamily;
use crate::tolerance::Tolerances;

use super::cuts::BipartiteCut;
use super::oracle::pt_min_eigenvalue_and_negatives;

/// Iteration cap for [`critical_gamma`]; 60 halvings of a unit bracket
/// reach below double-precision resolution.
pub const MAX_BISECTIONS: usize = 60;

/// Homogeneous γ at which `family` stops being NPT across `cut`.
///
/// Bisects on the exact partial-transpose spectrum: a point counts as NPT
/// when its smallest eigenvalue lies below `−zero_eigenvalue`. `lo` and `hi`
/// must straddle the transition.
pub fn critical_gamma<T: Real>(family: &StateFamily, cut: &BipartiteCut, lo: T, hi: T) -> Result<T> {
    critical_gamma_with(family, cut, lo, hi, &Tolerances::DEFAULT)
}

pub fn critical_gamma_with<T: Real>(
    family: &StateFamily,
    cut: &BipartiteCut,
    lo: T,
    hi: T,
    tol: &Tolerances,
) -> Result<T> {
    let n = family.n_qubits();
    if cut.n_qubits() != n {
        return Err(Error::DimensionMismatch { expected: n, got: cut.n_qubits() });
    }
    let bracket = || Error::Bracket { lo: lo.as_f64(), hi: hi.as_f64() };
    if !(lo >= T::zero() && hi <= T::one() && lo < hi) {
        return Err(bracket());
    }
    let rho = family.density::<T>();
    let npt = |g: T| -> Result<bool> {
        let dephased = apply_dephasing(&rho, &AggregateDephasing::homogeneous(n, g)?)?;
        Ok(pt_min_eigenvalue_and_negatives(&dephased, cut, tol)?.negative_count > 0)
    };
    let (mut a, mut b) = (lo, hi);
    let (fa, fb) = (npt(a)?, npt(b)?);
    if fa == fb {
        return Err(bracket());
    }
    let half = T::lit(0.5);
    for _ in 0..MAX_BISECTIONS {
        let mid = (a + b) * half;
        if mid <= a || mid >= b {
            break;
        }
        if npt(mid)? == fa {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok((a + b) * half)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::FamilyKind;

    #[test]
    fn two_qubit_cluster_threshold() {
        let fam = StateFamily::new(FamilyKind::LinearCluster, 2).unwrap();
        let cut = BipartiteCut::from_members(2, [1]).unwrap();
        let g: f64 = critical_gamma(&fam, &cut, 0.0, 1.0).unwrap();
        assert!((g - (2f64.sqrt() - 1.)).abs() < 1e-7, "{g}");
    }

    #[test]
    fn ghz_has_no_interior_threshold() {
        let fam = StateFamily::new(FamilyKind::Ghz, 3).unwrap();
        let cut = BipartiteCut::from_members(3, [1]).unwrap();
        // NPT for every γ > 0: [0.1, 1] does not bracket.
        assert!(matches!(critical_gamma(&fam, &cut, 0.1f64, 1.0), Err(Error::Bracket { .. })));
        assert!(critical_gamma(&fam, &cut, 0.5f64, 0.2).is_err());
    }
}
