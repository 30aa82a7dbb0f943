//! Dense square complex matrices.
//!
//! Entries are stored row-major. Every constructor rejects non-finite
//! entries, so any `ComplexMatrix` in circulation is finite.

use std::ops::{Index, IndexMut};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{is_finite, Real};
use crate::tolerance::DEFAULT_MAX_QUBITS;

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T: Real> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    /// Builds a `dim × dim` matrix from row-major entries.
    pub fn new(dim: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidSize("matrix dimension must be at least 1".into()));
        }
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, got: data.len() });
        }
        if let Some(k) = data.iter().position(|z| !is_finite(z)) {
            return Err(Error::NonFinite { row: k / dim, col: k % dim });
        }
        Ok(Self { dim, data })
    }

    pub fn from_rows(rows: &[Vec<Complex<T>>]) -> Result<Self> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: bad.len() });
        }
        Self::new(dim, rows.concat())
    }

    /// Real-valued convenience constructor, mostly for tests and fixed operators.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<Complex<T>>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex::new(T::lit(x), T::zero())).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be at least 1");
        Self { dim, data: vec![Complex::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex::one();
        }
        m
    }

    pub fn from_diagonal(diag: &[Complex<T>]) -> Result<Self> {
        let dim = diag.len();
        let mut data = vec![Complex::zero(); dim * dim];
        for (i, &d) in diag.iter().enumerate() {
            data[i * dim + i] = d;
        }
        Self::new(dim, data)
    }

    /// `|a⟩⟨b|` for column vectors `a`, `b` of equal length.
    pub fn outer(a: &[Complex<T>], b: &[Complex<T>]) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch { expected: a.len(), got: b.len() });
        }
        let dim = a.len();
        let mut data = Vec::with_capacity(dim * dim);
        for x in a {
            for y in b {
                data.push(x * y.conj());
            }
        }
        Self::new(dim, data)
    }

    /// Internal constructor for results whose finiteness follows from finite inputs.
    pub(crate) fn from_raw(dim: usize, data: Vec<Complex<T>>) -> Self {
        debug_assert_eq!(data.len(), dim * dim);
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex<T>] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn diagonal(&self) -> Vec<Complex<T>> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).map(|i| self[(i, i)]).fold(Complex::zero(), |acc, z| acc + z)
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let n = self.dim;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(self.data[j * n + i].conj());
            }
        }
        Self::from_raw(n, data)
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(self.data[j * n + i]);
            }
        }
        Self::from_raw(n, data)
    }

    /// Kronecker product under the default qubit capacity.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        self.kron_with_limit(other, DEFAULT_MAX_QUBITS)
    }

    /// Kronecker product; fails when the result would exceed `2^max_qubits` rows.
    pub fn kron_with_limit(&self, other: &Self, max_qubits: usize) -> Result<Self> {
        let limit = 1usize.checked_shl(max_qubits as u32).unwrap_or(usize::MAX);
        let dim = self.dim.checked_mul(other.dim).filter(|&d| d <= limit).ok_or_else(|| {
            Error::Capacity {
                requested: qubits_for(self.dim.saturating_mul(other.dim)),
                limit: max_qubits,
            }
        })?;
        let (na, nb) = (self.dim, other.dim);
        let mut data = vec![Complex::zero(); dim * dim];
        for i in 0..na {
            for j in 0..na {
                let a = self.data[i * na + j];
                if a.is_zero() {
                    continue;
                }
                for k in 0..nb {
                    let row = (i * nb + k) * dim + j * nb;
                    let brow = &other.data[k * nb..(k + 1) * nb];
                    for (dst, b) in data[row..row + nb].iter_mut().zip(brow) {
                        *dst = a * b;
                    }
                }
            }
        }
        Ok(Self::from_raw(dim, data))
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let n = self.dim;
        let mut data = vec![Complex::zero(); n * n];
        for i in 0..n {
            let out = &mut data[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for (dst, b) in out.iter_mut().zip(&other.data[k * n..(k + 1) * n]) {
                    *dst = *dst + a * b;
                }
            }
        }
        Ok(Self::from_raw(n, data))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self::from_raw(self.dim, self.data.iter().map(|z| z * s).collect())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self::from_raw(self.dim, data))
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.data.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    /// Largest entrywise modulus of `A - B`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max))
    }

    /// `‖A − A†‖_max`.
    pub fn hermitian_deviation(&self) -> T {
        let n = self.dim;
        let mut worst = T::zero();
        for i in 0..n {
            for j in i..n {
                let d = (self.data[i * n + j] - self.data[j * n + i].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Number of qubits when the dimension is a power of two.
    pub fn n_qubits(&self) -> Option<usize> {
        self.dim.is_power_of_two().then(|| self.dim.trailing_zeros() as usize)
    }

    /// Lossy conversion to another precision.
    pub fn cast<U: Real>(&self) -> ComplexMatrix<U> {
        let data = self
            .data
            .iter()
            .map(|z| Complex::new(U::lit(z.re.as_f64()), U::lit(z.im.as_f64())))
            .collect();
        ComplexMatrix::from_raw(self.dim, data)
    }
}

fn qubits_for(dim: usize) -> usize {
    (usize::BITS - dim.saturating_sub(1).leading_zeros()) as usize
}

impl<T: Real> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;

    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        assert!(i < self.dim && j < self.dim, "index ({i}, {j}) out of bounds");
        &self.data[i * self.dim + j]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        assert!(i < self.dim && j < self.dim, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.dim + j]
    }
}

/// Kronecker product of a sequence of matrices, left to right.
pub fn kron_all<'a, T: Real>(factors: impl IntoIterator<Item = &'a ComplexMatrix<T>>) -> Result<ComplexMatrix<T>> {
    let mut it = factors.into_iter();
    let first = it
        .next()
        .ok_or_else(|| Error::InvalidSize("empty Kronecker product".into()))?
        .clone();
    it.try_fold(first, |acc, m| acc.kron(m))
}

/// The single-qubit operators used throughout: projectors, ladder operators
/// and Pauli matrices.
pub mod ops {
    use super::ComplexMatrix;
    use crate::scalar::{c, Real};

    /// `|0⟩⟨0|`
    pub fn p0<T: Real>() -> ComplexMatrix<T> {
        ComplexMatrix::from_raw(2, vec![c(1., 0.), c(0., 0.), c(0., 0.), c(0., 0.)])
    }

    /// `|1⟩⟨1|`
    pub fn p1<T: Real>() -> ComplexMatrix<T> {
        ComplexMatrix::from_raw(2, vec![c(0., 0.), c(0., 0.), c(0., 0.), c(1., 0.)])
    }

    /// `|0⟩⟨1|`
    pub fn s_plus<T: Real>() -> ComplexMatrix<T> {
        ComplexMatrix::from_raw(2, vec![c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.)])
    }

    /// `|1⟩⟨0|`
    pub fn s_minus<T: Real>() -> ComplexMatrix<T> {
        ComplexMatrix::from_raw(2, vec![c(0., 0.), c(0., 0.), c(1., 0.), c(0., 0.)])
    }

    pub fn pauli_x<T: Real>() -> ComplexMatrix<T> {
        ComplexMatrix::from_raw(2, vec![c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)])
    }

    pub fn pauli_y<T: Real>() -> ComplexMatrix<T> {
        ComplexMatrix::from_raw(2, vec![c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)])
    }

    pub fn pauli_z<T: Real>() -> ComplexMatrix<T> {
        ComplexMatrix::from_raw(2, vec![c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)])
    }
}
