//! Eigenvalues of dense Hermitian matrices by cyclic complex Jacobi rotations.
//!
//! The matrix is first split into the connected components of its sparsity
//! graph (an edge wherever an off-diagonal entry is nonzero). Each component
//! is an invariant subspace, so its eigenvalues are computed independently.
//! Partial transposes of the states studied here are extremely sparse, which
//! turns most 2ⁿ×2ⁿ solves into a handful of tiny ones.
//!
//! Within a component, each rotation zeroes one off-diagonal pair `(p, q)`.
//! The pair is first rotated by a diagonal phase so that `a_pq` becomes real,
//! then a real symmetric Jacobi rotation finishes the job. Sweeps visit pairs
//! in row-cyclic order and stop when the off-diagonal Frobenius norm drops
//! below `jacobi_relative · ‖A‖_F`.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::Real;
use crate::tolerance::Tolerances;

/// All eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues<T: Real>(a: &ComplexMatrix<T>) -> Result<Vec<T>> {
    hermitian_eigenvalues_with(a, &Tolerances::DEFAULT)
}

pub fn hermitian_eigenvalues_with<T: Real>(a: &ComplexMatrix<T>, tol: &Tolerances) -> Result<Vec<T>> {
    let dev = a.hermitian_deviation();
    if dev > T::tol(tol.eigen_input_hermitian) {
        return Err(Error::NotHermitian(dev.as_f64()));
    }
    let n = a.dim();
    let mut eigenvalues = Vec::with_capacity(n);
    for component in components(a) {
        if component.len() == 1 {
            let i = component[0];
            eigenvalues.push(a[(i, i)].re);
            continue;
        }
        let mut block = extract(a, &component);
        jacobi(&mut block, component.len(), tol)?;
        eigenvalues.extend((0..component.len()).map(|i| block[i * component.len() + i].re));
    }
    eigenvalues.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    Ok(eigenvalues)
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue<T: Real>(a: &ComplexMatrix<T>) -> Result<T> {
    Ok(hermitian_eigenvalues(a)?[0])
}

/// Index sets of the connected components, each sorted ascending, ordered by
/// their smallest index.
fn components<T: Real>(a: &ComplexMatrix<T>) -> Vec<Vec<usize>> {
    let n = a.dim();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..n {
        let row = a.row(i);
        for (j, z) in row.iter().enumerate().skip(i + 1) {
            if !z.is_zero() {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    let (lo, hi) = if ri < rj { (ri, rj) } else { (rj, ri) };
                    parent[hi] = lo;
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        let r = find(&mut parent, i);
        groups[r].push(i);
    }
    groups.into_iter().filter(|g| !g.is_empty()).collect()
}

fn extract<T: Real>(a: &ComplexMatrix<T>, idx: &[usize]) -> Vec<Complex<T>> {
    let m = idx.len();
    let mut out = Vec::with_capacity(m * m);
    for &i in idx {
        for &j in idx {
            out.push(a[(i, j)]);
        }
    }
    // Hermitize so rounding in the input cannot leak into the rotations.
    for i in 0..m {
        out[i * m + i] = Complex::new(out[i * m + i].re, T::zero());
        for j in i + 1..m {
            let avg = (out[i * m + j] + out[j * m + i].conj()) * T::lit(0.5);
            out[i * m + j] = avg;
            out[j * m + i] = avg.conj();
        }
    }
    out
}

fn off_diagonal_norm_sqr<T: Real>(a: &[Complex<T>], m: usize) -> T {
    let mut s = T::zero();
    for i in 0..m {
        for j in i + 1..m {
            s = s + a[i * m + j].norm_sqr();
        }
    }
    s + s
}

fn jacobi<T: Real>(a: &mut [Complex<T>], m: usize, tol: &Tolerances) -> Result<()> {
    let total: T = a.iter().map(|z| z.norm_sqr()).sum();
    if total.is_zero() {
        return Ok(());
    }
    let rel = T::tol(tol.jacobi_relative);
    let target = rel * rel * total;
    for _ in 0..tol.jacobi_max_sweeps {
        if off_diagonal_norm_sqr(a, m) <= target {
            return Ok(());
        }
        for p in 0..m {
            for q in p + 1..m {
                rotate(a, m, p, q);
            }
        }
    }
    if off_diagonal_norm_sqr(a, m) <= target {
        Ok(())
    } else {
        Err(Error::NoConvergence(tol.jacobi_max_sweeps))
    }
}

/// Applies `A ← W† A W` with `W` chosen so that `A[p][q]` becomes zero.
fn rotate<T: Real>(a: &mut [Complex<T>], m: usize, p: usize, q: usize) {
    let apq = a[p * m + q];
    let r = apq.norm();
    if r.is_zero() {
        return;
    }
    let app = a[p * m + p].re;
    let aqq = a[q * m + q].re;
    // Skip pairs that are already negligible relative to their diagonal.
    let eps = T::epsilon();
    if r <= eps * eps * (app.abs() + aqq.abs()) {
        a[p * m + q] = Complex::zero();
        a[q * m + p] = Complex::zero();
        return;
    }
    let phase = apq / r; // e^{iα}
    let tau = (aqq - app) / (r + r);
    let t = if tau.is_zero() {
        T::one()
    } else {
        tau.signum() / (tau.abs() + (T::one() + tau * tau).sqrt())
    };
    let cs = T::one() / (T::one() + t * t).sqrt();
    let sn = t * cs;

    // W = D·G with D = diag(1, e^{-iα}) on (p, q) and G the real rotation
    // [[c, s], [-s, c]].
    let w_pp = Complex::new(cs, T::zero());
    let w_pq = Complex::new(sn, T::zero());
    let w_qp = phase.conj() * (-sn);
    let w_qq = phase.conj() * cs;

    // A ← A·W (columns p, q)
    for k in 0..m {
        let akp = a[k * m + p];
        let akq = a[k * m + q];
        a[k * m + p] = akp * w_pp + akq * w_qp;
        a[k * m + q] = akp * w_pq + akq * w_qq;
    }
    // A ← W†·A (rows p, q)
    for k in 0..m {
        let apk = a[p * m + k];
        let aqk = a[q * m + k];
        a[p * m + k] = w_pp.conj() * apk + w_qp.conj() * aqk;
        a[q * m + k] = w_pq.conj() * apk + w_qq.conj() * aqk;
    }
    a[p * m + q] = Complex::zero();
    a[q * m + p] = Complex::zero();
    a[p * m + p] = Complex::new(a[p * m + p].re, T::zero());
    a[q * m + q] = Complex::new(a[q * m + q].re, T::zero());
}
