//! Seeded random instances for property checks.
//!
//! Nothing here is a physical model of how collision parameters are
//! distributed; the generators only have to cover the parameter space.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channel::{AggregateDephasing, CollisionParams, CollisionSchedule, MicroCollisionSpec};
use crate::density::DensityMatrix;
use crate::matrix::ComplexMatrix;
use crate::scalar::Real;
use crate::states::StateVector;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn unit_complex<T: Real, R: Rng>(rng: &mut R) -> Complex<T> {
    Complex::new(T::lit(rng.gen_range(-1.0..1.0)), T::lit(rng.gen_range(-1.0..1.0)))
}

/// Normalized ket on `n` qubits with uniformly drawn components.
pub fn random_ket<T: Real, R: Rng>(n: usize, rng: &mut R) -> StateVector<T> {
    loop {
        let v: Vec<Complex<T>> = (0..1usize << n).map(|_| unit_complex(rng)).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if norm > T::lit(1e-3) {
            let v = v.into_iter().map(|z| z / norm).collect();
            return StateVector::new(v).expect("normalized by construction");
        }
    }
}

/// `G G† / tr(G G†)` for a `2ⁿ × rank` matrix `G` of random entries.
pub fn random_density<T: Real, R: Rng>(n: usize, rank: usize, rng: &mut R) -> DensityMatrix<T> {
    let dim = 1usize << n;
    let rank = rank.clamp(1, dim);
    let g: Vec<Complex<T>> = (0..dim * rank).map(|_| unit_complex(rng)).collect();
    let mut data = vec![Complex::new(T::zero(), T::zero()); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            let mut s = Complex::new(T::zero(), T::zero());
            for k in 0..rank {
                s = s + g[i * rank + k] * g[j * rank + k].conj();
            }
            data[i * dim + j] = s;
        }
    }
    let m = ComplexMatrix::new(dim, data).expect("finite");
    let tr = m.trace().re;
    let mut m = m.scale(Complex::new(T::one() / tr, T::zero()));
    // exact Hermitian symmetry and real diagonal
    for i in 0..dim {
        m[(i, i)] = Complex::new(m[(i, i)].re, T::zero());
        for j in i + 1..dim {
            m[(j, i)] = m[(i, j)].conj();
        }
    }
    DensityMatrix::new(m).expect("Gram matrices are states")
}

pub fn random_hermitian<T: Real, R: Rng>(dim: usize, rng: &mut R) -> ComplexMatrix<T> {
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        m[(i, i)] = Complex::new(T::lit(rng.gen_range(-1.0..1.0)), T::zero());
        for j in i + 1..dim {
            let z = unit_complex(rng);
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

/// Matrix with small integer entries, for exact-arithmetic checks.
pub fn random_integer_matrix<T: Real, R: Rng>(dim: usize, rng: &mut R) -> ComplexMatrix<T> {
    let data = (0..dim * dim)
        .map(|_| Complex::new(T::lit(rng.gen_range(-4..=4) as f64), T::lit(rng.gen_range(-4..=4) as f64)))
        .collect();
    ComplexMatrix::new(dim, data).expect("finite")
}

pub fn random_params<T: Real, R: Rng>(rng: &mut R) -> CollisionParams<T> {
    let lambda = T::lit(rng.gen_range(0.0..=1.0));
    let phi = T::lit(rng.gen_range(0.0..std::f64::consts::TAU));
    CollisionParams::new(lambda, phi).expect("in range")
}

/// Random collision strengths kept inside `[lo, hi] ⊆ [0, 1]`.
pub fn random_params_in<T: Real, R: Rng>(lo: f64, hi: f64, rng: &mut R) -> CollisionParams<T> {
    let lambda = T::lit(rng.gen_range(lo..=hi));
    let phi = T::lit(rng.gen_range(0.0..std::f64::consts::TAU));
    CollisionParams::new(lambda, phi).expect("in range")
}

/// Each qubit gets between 0 and `max_k` random collisions.
pub fn random_schedule<T: Real, R: Rng>(n: usize, max_k: usize, rng: &mut R) -> CollisionSchedule<T> {
    random_schedule_in(n, max_k, 0.0, 1.0, rng)
}

pub fn random_schedule_in<T: Real, R: Rng>(
    n: usize,
    max_k: usize,
    lo: f64,
    hi: f64,
    rng: &mut R,
) -> CollisionSchedule<T> {
    let lists = (0..n)
        .map(|_| {
            let k = rng.gen_range(0..=max_k);
            (0..k).map(|_| random_params_in(lo, hi, rng)).collect()
        })
        .collect();
    CollisionSchedule::from_lists(lists)
}

pub fn random_aggregate<T: Real, R: Rng>(n: usize, rng: &mut R) -> AggregateDephasing<T> {
    let gamma = (0..n).map(|_| T::lit(rng.gen_range(0.0..=1.0))).collect();
    let phase = (0..n).map(|_| T::lit(rng.gen_range(0.0..std::f64::consts::TAU))).collect();
    AggregateDephasing::new(gamma, phase).expect("in range")
}

pub fn random_spec<T: Real, R: Rng>(rng: &mut R) -> MicroCollisionSpec<T> {
    let psi = random_ket(1, rng);
    let phi = random_ket(1, rng);
    let rank = rng.gen_range(1..=2);
    let xi = random_density(1, rank, rng);
    let th_psi = T::lit(rng.gen_range(0.0..std::f64::consts::TAU));
    let th_phi = T::lit(rng.gen_range(0.0..std::f64::consts::TAU));
    MicroCollisionSpec::new(psi, th_psi, phi, th_phi, xi).expect("valid by construction")
}
