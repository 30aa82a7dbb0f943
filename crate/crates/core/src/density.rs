//! Density matrices on qubit registers, partial trace and partial transpose.

use num_complex::Complex;
use num_traits::Zero;

use crate::eigen::hermitian_eigenvalues_with;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::qubits::{qubit_bit, QubitSubset};
use crate::scalar::Real;
use crate::tolerance::Tolerances;

/// A Hermitian, unit-trace, positive semidefinite matrix of dimension `2ⁿ`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T: Real> {
    n_qubits: usize,
    mat: ComplexMatrix<T>,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates Hermiticity, trace and positivity at the default tolerances.
    pub fn new(mat: ComplexMatrix<T>) -> Result<Self> {
        Self::new_with(mat, &Tolerances::DEFAULT)
    }

    pub fn new_with(mat: ComplexMatrix<T>, tol: &Tolerances) -> Result<Self> {
        let n_qubits = mat.n_qubits().ok_or(Error::NotQubitDimension(mat.dim()))?;
        let rho = Self { n_qubits, mat };
        rho.validate(tol)?;
        Ok(rho)
    }

    /// Wraps a matrix that is a density matrix by construction.
    pub(crate) fn from_trusted(n_qubits: usize, mat: ComplexMatrix<T>) -> Self {
        debug_assert_eq!(mat.dim(), 1 << n_qubits);
        Self { n_qubits, mat }
    }

    /// Re-checks the density-matrix invariants.
    pub fn validate(&self, tol: &Tolerances) -> Result<()> {
        let dev = self.mat.hermitian_deviation();
        if dev > T::tol(tol.hermitian) {
            return Err(Error::NotHermitian(dev.as_f64()));
        }
        let tr = self.mat.trace();
        if (tr.re - T::one()).abs() > T::tol(tol.trace) || tr.im.abs() > T::tol(tol.trace) {
            return Err(Error::Trace(tr.re.as_f64()));
        }
        let min = hermitian_eigenvalues_with(&self.mat, tol)?[0];
        if min < -T::tol(tol.psd) {
            return Err(Error::NotPositive(min.as_f64()));
        }
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.mat
    }

    pub fn trace(&self) -> Complex<T> {
        self.mat.trace()
    }

    /// `tr ρ²`
    pub fn purity(&self) -> T {
        // tr(ρ²) = Σ |ρ_ij|² for Hermitian ρ
        self.mat.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }

    /// `ρ ⊗ σ`, with `self` on the leading qubits.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let mat = self.mat.kron(&other.mat)?;
        Ok(Self::from_trusted(self.n_qubits + other.n_qubits, mat))
    }

    /// Traces out `traced`; the result lists the remaining qubits in
    /// ascending original order.
    pub fn partial_trace(&self, traced: &QubitSubset) -> Result<Self> {
        self.check_register(traced)?;
        traced.ensure_proper()?;
        let n = self.n_qubits;
        let kept: Vec<usize> = traced.complement().members().map(|q| qubit_bit(n, q)).collect();
        let gone: Vec<usize> = traced.members().map(|q| qubit_bit(n, q)).collect();
        let out_n = kept.len();
        let out_dim = 1usize << out_n;
        let kept_idx: Vec<usize> = (0..out_dim).map(|l| scatter(l, &kept)).collect();
        let gone_idx: Vec<usize> = (0..1usize << gone.len()).map(|l| scatter(l, &gone)).collect();
        let mut data = vec![Complex::zero(); out_dim * out_dim];
        for (i, &ri) in kept_idx.iter().enumerate() {
            for (j, &cj) in kept_idx.iter().enumerate() {
                data[i * out_dim + j] = gone_idx
                    .iter()
                    .fold(Complex::zero(), |acc, &t| acc + self.mat[(ri | t, cj | t)]);
            }
        }
        Ok(Self::from_trusted(out_n, ComplexMatrix::from_raw(out_dim, data)))
    }

    /// Transposes the indices of the qubits in `cut`. The result is
    /// Hermitian with unit trace but need not be positive.
    pub fn partial_transpose(&self, cut: &QubitSubset) -> Result<ComplexMatrix<T>> {
        self.check_register(cut)?;
        cut.ensure_proper()?;
        Ok(partial_transpose_mask(&self.mat, cut.index_mask()))
    }

    fn check_register(&self, s: &QubitSubset) -> Result<()> {
        if s.n_qubits() != self.n_qubits {
            Err(Error::DimensionMismatch { expected: self.n_qubits, got: s.n_qubits() })
        } else {
            Ok(())
        }
    }

    pub fn cast<U: Real>(&self) -> DensityMatrix<U> {
        DensityMatrix::from_trusted(self.n_qubits, self.mat.cast())
    }
}

/// Swaps the bits selected by `mask` between row and column index.
pub fn partial_transpose_mask<T: Real>(m: &ComplexMatrix<T>, mask: usize) -> ComplexMatrix<T> {
    let dim = m.dim();
    let src = m.as_slice();
    let mut data = vec![Complex::zero(); dim * dim];
    for r in 0..dim {
        for c in 0..dim {
            let sr = (r & !mask) | (c & mask);
            let sc = (c & !mask) | (r & mask);
            data[r * dim + c] = src[sr * dim + sc];
        }
    }
    ComplexMatrix::from_raw(dim, data)
}

/// Places the bits of `local` (most significant first) onto `targets`.
fn scatter(local: usize, targets: &[usize]) -> usize {
    let k = targets.len();
    targets
        .iter()
        .enumerate()
        .fold(0, |acc, (pos, &bit)| if local >> (k - 1 - pos) & 1 == 1 { acc | bit } else { acc })
}
