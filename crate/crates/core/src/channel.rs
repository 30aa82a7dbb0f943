//! Collisional decoherence.
//!
//! A system qubit collides with a fresh environment qubit through a
//! controlled unitary `U = |0⟩⟨0| ⊗ V⁰ + |1⟩⟨1| ⊗ V¹`. Tracing the
//! environment out leaves the populations alone and multiplies the
//! coherence `ρ₀₁` by `⟨X⟩_ξ = tr(ξ V¹†V⁰) = λ e^{iφ}`. A sequence of
//! collisions on qubit `i` therefore reduces to one dephasing factor
//! `γᵢ e^{iΦᵢ}` with `γᵢ = Πλ` and `Φᵢ = Σφ`.
//!
//! Two routes are provided and cross-checked in tests: the microscopic one
//! (build `U`, evolve `ρ ⊗ ξ`, trace out) and the reduced entrywise map.

use num_complex::Complex;
use num_traits::One;
use rayon::prelude::*;

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::qubits::{embed_operator, QubitSubset};
use crate::scalar::Real;
use crate::states::StateVector;
use crate::tolerance::{Tolerances, DEFAULT_MAX_QUBITS};

/// Reduces an angle into `[0, 2π)`.
pub fn normalize_phase<T: Real>(phi: T) -> T {
    let two_pi = T::TAU();
    let r = phi % two_pi;
    let r = if r < T::zero() { r + two_pi } else { r };
    // `r + 2π` can round up to exactly 2π for tiny negative inputs.
    if r >= two_pi {
        T::zero()
    } else {
        r
    }
}

/// Strength and phase of a single collision, `⟨X⟩_ξ = λ e^{iφ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollisionParams<T: Real> {
    lambda: T,
    phi: T,
}

impl<T: Real> CollisionParams<T> {
    pub fn new(lambda: T, phi: T) -> Result<Self> {
        if !(lambda >= T::zero() && lambda <= T::one()) {
            return Err(Error::InvalidParameter(format!("lambda = {lambda} outside [0, 1]")));
        }
        if !phi.is_finite() {
            return Err(Error::InvalidParameter(format!("phi = {phi} is not finite")));
        }
        Ok(Self { lambda, phi: normalize_phase(phi) })
    }

    /// The identity collision, λ = 1 and φ = 0.
    pub fn trivial() -> Self {
        Self { lambda: T::one(), phi: T::zero() }
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    pub fn phi(&self) -> T {
        self.phi
    }

    pub fn factor(&self) -> Complex<T> {
        Complex::from_polar(self.lambda, self.phi)
    }
}

/// Ordered collisions suffered by each qubit. Qubit `i` (1-based) lives at
/// position `i − 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CollisionSchedule<T: Real> {
    per_qubit: Vec<Vec<CollisionParams<T>>>,
}

impl<T: Real> CollisionSchedule<T> {
    /// No collisions on any of `n_qubits` qubits.
    pub fn empty(n_qubits: usize) -> Self {
        Self { per_qubit: vec![Vec::new(); n_qubits] }
    }

    pub fn from_lists(per_qubit: Vec<Vec<CollisionParams<T>>>) -> Self {
        Self { per_qubit }
    }

    /// Every qubit suffers `k` identical collisions `(λ, φ)`.
    pub fn homogeneous(n_qubits: usize, k: usize, lambda: T, phi: T) -> Result<Self> {
        let p = CollisionParams::new(lambda, phi)?;
        Ok(Self { per_qubit: vec![vec![p; k]; n_qubits] })
    }

    /// Only `qubit` collides, `k` times with `(λ, 0)`.
    pub fn single_qubit(n_qubits: usize, qubit: usize, k: usize, lambda: T) -> Result<Self> {
        if qubit == 0 || qubit > n_qubits {
            return Err(Error::QubitIndex { index: qubit, n_qubits });
        }
        let mut s = Self::empty(n_qubits);
        s.per_qubit[qubit - 1] = vec![CollisionParams::new(lambda, T::zero())?; k];
        Ok(s)
    }

    pub fn push(&mut self, qubit: usize, params: CollisionParams<T>) -> Result<()> {
        let n_qubits = self.per_qubit.len();
        let list = self
            .per_qubit
            .get_mut(qubit.wrapping_sub(1))
            .ok_or(Error::QubitIndex { index: qubit, n_qubits })?;
        list.push(params);
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.per_qubit.len()
    }

    pub fn collisions(&self, qubit: usize) -> &[CollisionParams<T>] {
        &self.per_qubit[qubit - 1]
    }

    pub fn aggregate(&self) -> AggregateDephasing<T> {
        schedule_aggregate(self)
    }
}

/// Net dephasing per qubit: coherences of qubit `i` pick up `γᵢ e^{±iΦᵢ}`.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateDephasing<T: Real> {
    gamma: Vec<T>,
    phase: Vec<T>,
}

impl<T: Real> AggregateDephasing<T> {
    pub fn new(gamma: Vec<T>, phase: Vec<T>) -> Result<Self> {
        if gamma.len() != phase.len() {
            return Err(Error::DimensionMismatch { expected: gamma.len(), got: phase.len() });
        }
        if let Some(g) = gamma.iter().find(|&&g| !(g >= T::zero() && g <= T::one())) {
            return Err(Error::InvalidParameter(format!("gamma = {g} outside [0, 1]")));
        }
        if phase.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidParameter("non-finite phase".into()));
        }
        let phase = phase.into_iter().map(normalize_phase).collect();
        Ok(Self { gamma, phase })
    }

    /// Zero phases.
    pub fn from_gammas(gamma: Vec<T>) -> Result<Self> {
        let phase = vec![T::zero(); gamma.len()];
        Self::new(gamma, phase)
    }

    pub fn identity(n_qubits: usize) -> Self {
        Self { gamma: vec![T::one(); n_qubits], phase: vec![T::zero(); n_qubits] }
    }

    pub fn homogeneous(n_qubits: usize, gamma: T) -> Result<Self> {
        Self::from_gammas(vec![gamma; n_qubits])
    }

    pub fn n_qubits(&self) -> usize {
        self.gamma.len()
    }

    pub fn gamma(&self) -> &[T] {
        &self.gamma
    }

    pub fn phase(&self) -> &[T] {
        &self.phase
    }

    /// Same γ, all phases dropped.
    pub fn without_phases(&self) -> Self {
        Self { gamma: self.gamma.clone(), phase: vec![T::zero(); self.gamma.len()] }
    }

    /// Dephasing equivalent to applying `self` then `other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n_qubits() != other.n_qubits() {
            return Err(Error::DimensionMismatch { expected: self.n_qubits(), got: other.n_qubits() });
        }
        let gamma = self.gamma.iter().zip(&other.gamma).map(|(a, b)| *a * *b).collect();
        let phase = self.phase.iter().zip(&other.phase).map(|(a, b)| normalize_phase(*a + *b)).collect();
        Ok(Self { gamma, phase })
    }
}

/// `γᵢ = Π_j λᵢⱼ`, `Φᵢ = Σ_j φᵢⱼ mod 2π`. Qubits without collisions get
/// `γ = 1`, `Φ = 0`.
pub fn schedule_aggregate<T: Real>(sched: &CollisionSchedule<T>) -> AggregateDephasing<T> {
    let gamma = sched
        .per_qubit
        .iter()
        .map(|l| l.iter().fold(T::one(), |g, p| g * p.lambda))
        .collect();
    let phase = sched
        .per_qubit
        .iter()
        .map(|l| l.iter().fold(T::zero(), |s, p| normalize_phase(s + p.phi)))
        .collect();
    AggregateDephasing { gamma, phase }
}

/// Multiplies `ρ[r][c]` by `γᵢe^{+iΦᵢ}` for every qubit `i` with bit 0 in `r`
/// and 1 in `c`, by `γᵢe^{−iΦᵢ}` for bit 1 in `r` and 0 in `c`.
pub fn apply_dephasing<T: Real>(rho: &DensityMatrix<T>, agg: &AggregateDephasing<T>) -> Result<DensityMatrix<T>> {
    let n = rho.n_qubits();
    if agg.n_qubits() != n {
        return Err(Error::DimensionMismatch { expected: n, got: agg.n_qubits() });
    }
    // Indexed by basis-bit position: bit b belongs to qubit n − b.
    let up: Vec<Complex<T>> = (0..n)
        .map(|b| Complex::from_polar(agg.gamma[n - 1 - b], agg.phase[n - 1 - b]))
        .collect();
    let down: Vec<Complex<T>> = up.iter().map(|z| z.conj()).collect();
    let dim = rho.dim();
    let src = rho.matrix().as_slice();
    let mut data = src.to_vec();
    let kernel = |(r, row): (usize, &mut [Complex<T>])| {
        for (c, z) in row.iter_mut().enumerate() {
            let mut diff = r ^ c;
            if diff == 0 {
                continue;
            }
            let mut f = Complex::<T>::one();
            while diff != 0 {
                let b = diff.trailing_zeros() as usize;
                f = f * if r >> b & 1 == 0 { up[b] } else { down[b] };
                diff &= diff - 1;
            }
            *z = *z * f;
        }
    };
    if dim >= 64 {
        data.par_chunks_mut(dim).enumerate().for_each(kernel);
    } else {
        data.chunks_mut(dim).enumerate().for_each(kernel);
    }
    Ok(DensityMatrix::from_trusted(n, ComplexMatrix::from_raw(dim, data)))
}

/// Runs every collision of the schedule through the reduced map.
pub fn apply_schedule<T: Real>(rho: &DensityMatrix<T>, sched: &CollisionSchedule<T>) -> Result<DensityMatrix<T>> {
    apply_dephasing(rho, &schedule_aggregate(sched))
}

/// Microscopic description of one collision.
///
/// `V⁰ = |ψ⟩⟨0| + |ψ⊥⟩⟨1|`, `V¹ = |φ⊥⟩⟨0| + |φ⟩⟨1|`, with
/// `(a, b)⊥ = e^{iθ}(−b̄, ā)` and θ the matching `*_perp_phase`.
#[derive(Debug, Clone, PartialEq)]
pub struct MicroCollisionSpec<T: Real> {
    psi: StateVector<T>,
    psi_perp_phase: T,
    phi_ket: StateVector<T>,
    phi_perp_phase: T,
    xi: DensityMatrix<T>,
}

impl<T: Real> MicroCollisionSpec<T> {
    pub fn new(
        psi: StateVector<T>,
        psi_perp_phase: T,
        phi_ket: StateVector<T>,
        phi_perp_phase: T,
        xi: DensityMatrix<T>,
    ) -> Result<Self> {
        for (name, v) in [("psi", &psi), ("phi", &phi_ket)] {
            if v.n_qubits() != 1 {
                return Err(Error::InvalidSize(format!("{name} must be a single-qubit ket")));
            }
        }
        if xi.n_qubits() != 1 {
            return Err(Error::InvalidSize("environment state must be a single qubit".into()));
        }
        if !psi_perp_phase.is_finite() || !phi_perp_phase.is_finite() {
            return Err(Error::InvalidParameter("non-finite perpendicular phase".into()));
        }
        Ok(Self { psi, psi_perp_phase, phi_ket, phi_perp_phase, xi })
    }

    /// `V⁰`, columns `ψ` and `ψ⊥`.
    pub fn v0(&self) -> ComplexMatrix<T> {
        let psi = self.psi.amplitudes();
        let perp = perpendicular(psi, self.psi_perp_phase);
        columns(psi, &perp)
    }

    /// `V¹`, columns `φ⊥` and `φ`.
    pub fn v1(&self) -> ComplexMatrix<T> {
        let phi = self.phi_ket.amplitudes();
        let perp = perpendicular(phi, self.phi_perp_phase);
        columns(&perp, phi)
    }

    /// `X = V¹†V⁰`.
    pub fn x_operator(&self) -> ComplexMatrix<T> {
        self.v1().dagger().matmul(&self.v0()).expect("2x2 operands")
    }

    pub fn environment(&self) -> &DensityMatrix<T> {
        &self.xi
    }
}

fn perpendicular<T: Real>(v: &[Complex<T>], theta: T) -> [Complex<T>; 2] {
    let ph = Complex::from_polar(T::one(), theta);
    [-v[1].conj() * ph, v[0].conj() * ph]
}

fn columns<T: Real>(c0: &[Complex<T>], c1: &[Complex<T>]) -> ComplexMatrix<T> {
    ComplexMatrix::from_raw(2, vec![c0[0], c1[0], c0[1], c1[1]])
}

/// `|0⟩⟨0| ⊗ V⁰ + |1⟩⟨1| ⊗ V¹`, system qubit first.
pub fn build_collision_unitary<T: Real>(spec: &MicroCollisionSpec<T>) -> ComplexMatrix<T> {
    use crate::matrix::ops::{p0, p1};
    let a = p0::<T>().kron(&spec.v0()).expect("4x4");
    let b = p1::<T>().kron(&spec.v1()).expect("4x4");
    a.add(&b).expect("equal dimensions")
}

/// `⟨X⟩_ξ = tr(ξX)` in polar form.
pub fn x_expectation<T: Real>(spec: &MicroCollisionSpec<T>) -> CollisionParams<T> {
    let z = spec.xi.matrix().matmul(&spec.x_operator()).expect("2x2 operands").trace();
    // |tr(ξX)| ≤ 1 for unitary X; clip rounding overshoot.
    let lambda = z.norm().min(T::one());
    let phi = if z.norm().is_zero() { T::zero() } else { z.arg() };
    CollisionParams { lambda, phi: normalize_phase(phi) }
}

/// One collision of `qubit` (1-based) with a fresh environment qubit in state
/// ξ, evolved on the joint register and traced out.
pub fn apply_microscopic_collision<T: Real>(
    rho: &DensityMatrix<T>,
    qubit: usize,
    spec: &MicroCollisionSpec<T>,
) -> Result<DensityMatrix<T>> {
    apply_microscopic_collision_with_limit(rho, qubit, spec, DEFAULT_MAX_QUBITS)
}

pub fn apply_microscopic_collision_with_limit<T: Real>(
    rho: &DensityMatrix<T>,
    qubit: usize,
    spec: &MicroCollisionSpec<T>,
    max_qubits: usize,
) -> Result<DensityMatrix<T>> {
    let n = rho.n_qubits();
    if qubit == 0 || qubit > n {
        return Err(Error::QubitIndex { index: qubit, n_qubits: n });
    }
    if n + 1 > max_qubits {
        return Err(Error::Capacity { requested: n + 1, limit: max_qubits });
    }
    let joint = rho.tensor(&spec.xi)?;
    let u = embed_operator(&build_collision_unitary(spec), &[qubit, n + 1], n + 1)?;
    let evolved = u.matmul(joint.matrix())?.matmul(&u.dagger())?;
    // U is unitary, so the evolved matrix is a state up to rounding.
    let evolved = DensityMatrix::from_trusted(n + 1, evolved);
    evolved.partial_trace(&QubitSubset::new(n + 1, [n + 1])?)
}

/// Largest `‖U†U − I‖_max`, exposed for diagnostics.
pub fn unitarity_defect<T: Real>(u: &ComplexMatrix<T>) -> T {
    let prod = u.dagger().matmul(u).expect("square");
    prod.max_abs_diff(&ComplexMatrix::identity(u.dim())).expect("same dim")
}

/// Checks that the output of a channel is still a density matrix.
pub fn check_state<T: Real>(rho: &DensityMatrix<T>) -> Result<()> {
    rho.validate(&Tolerances::DEFAULT)
}
