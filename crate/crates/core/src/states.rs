//! GHZ, W and linear cluster states.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::Zero;

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::Real;
use crate::tolerance::{Tolerances, DEFAULT_MAX_QUBITS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Ghz,
    W,
    LinearCluster,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Ghz => "ghz",
            FamilyKind::W => "w",
            FamilyKind::LinearCluster => "cluster",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ghz" => Ok(FamilyKind::Ghz),
            "w" => Ok(FamilyKind::W),
            "cluster" | "linear_cluster" | "linearcluster" => Ok(FamilyKind::LinearCluster),
            other => Err(Error::InvalidSize(format!("unknown state family `{other}`"))),
        }
    }
}

/// One of the three studied families at a definite size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StateFamily {
    kind: FamilyKind,
    n_qubits: usize,
}

impl StateFamily {
    pub fn new(kind: FamilyKind, n_qubits: usize) -> Result<Self> {
        check_size(n_qubits)?;
        Ok(Self { kind, n_qubits })
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn state<T: Real>(&self) -> StateVector<T> {
        match self.kind {
            FamilyKind::Ghz => make_ghz(self.n_qubits),
            FamilyKind::W => make_w(self.n_qubits),
            FamilyKind::LinearCluster => make_cluster(self.n_qubits),
        }
        .expect("size validated at construction")
    }

    pub fn density<T: Real>(&self) -> DensityMatrix<T> {
        self.state().to_density_unchecked()
    }
}

fn check_size(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::InvalidSize(format!("need at least 2 qubits, got {n}")))
    } else if n > DEFAULT_MAX_QUBITS {
        Err(Error::Capacity { requested: n, limit: DEFAULT_MAX_QUBITS })
    } else {
        Ok(())
    }
}

/// Pure state amplitudes in the computational basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T: Real> {
    n_qubits: usize,
    amplitudes: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    pub fn new(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        Self::new_with(amplitudes, &Tolerances::DEFAULT)
    }

    pub fn new_with(amplitudes: Vec<Complex<T>>, tol: &Tolerances) -> Result<Self> {
        let dim = amplitudes.len();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::NotQubitDimension(dim));
        }
        let v = Self { n_qubits: dim.trailing_zeros() as usize, amplitudes };
        let norm = v.norm_sqr();
        if !norm.is_finite() || (norm - T::one()).abs() > T::tol(tol.normalization) {
            return Err(Error::Normalization(norm.as_f64()));
        }
        Ok(v)
    }

    /// Single-qubit `a|0⟩ + b|1⟩`.
    pub fn qubit(a: Complex<T>, b: Complex<T>) -> Result<Self> {
        Self::new(vec![a, b])
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `|ψ⟩⟨ψ|`
    pub fn to_density(&self) -> Result<DensityMatrix<T>> {
        let norm = self.norm_sqr();
        if (norm - T::one()).abs() > T::tol(Tolerances::DEFAULT.normalization) {
            return Err(Error::Normalization(norm.as_f64()));
        }
        Ok(self.to_density_unchecked())
    }

    fn to_density_unchecked(&self) -> DensityMatrix<T> {
        let mat = ComplexMatrix::outer(&self.amplitudes, &self.amplitudes).expect("finite amplitudes");
        DensityMatrix::from_trusted(self.n_qubits, mat)
    }
}

/// `(|0…0⟩ + |1…1⟩)/√2`
pub fn make_ghz<T: Real>(n: usize) -> Result<StateVector<T>> {
    check_size(n)?;
    let dim = 1 << n;
    let mut amplitudes = vec![Complex::zero(); dim];
    let a = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
    amplitudes[0] = a;
    amplitudes[dim - 1] = a;
    Ok(StateVector { n_qubits: n, amplitudes })
}

/// Equal superposition of the `n` single-excitation basis states.
pub fn make_w<T: Real>(n: usize) -> Result<StateVector<T>> {
    check_size(n)?;
    let mut amplitudes = vec![Complex::zero(); 1 << n];
    let a = Complex::new(T::one() / T::lit(n as f64).sqrt(), T::zero());
    for q in 0..n {
        amplitudes[1 << q] = a;
    }
    Ok(StateVector { n_qubits: n, amplitudes })
}

/// Linear cluster state: `|+⟩^⊗n` followed by controlled-Z on every
/// neighbouring pair `(i, i+1)`.
///
/// Every amplitude has modulus `2^{-n/2}`; the sign is `(-1)^k` where `k`
/// counts adjacent `11` pairs in the bitstring.
pub fn make_cluster<T: Real>(n: usize) -> Result<StateVector<T>> {
    check_size(n)?;
    let dim = 1usize << n;
    let modulus = T::one() / T::lit(dim as f64).sqrt();
    let amplitudes = (0..dim)
        .map(|idx| {
            let adjacent = (idx & (idx >> 1)).count_ones();
            let sign = if adjacent % 2 == 0 { T::one() } else { -T::one() };
            Complex::new(sign * modulus, T::zero())
        })
        .collect();
    Ok(StateVector { n_qubits: n, amplitudes })
}
