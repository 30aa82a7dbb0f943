//! Numerical tolerances and capacity limits, kept in one place.

/// Default cap on the number of qubits a dense matrix may span. A 12-qubit
/// density matrix is 4096² complex entries.
pub const DEFAULT_MAX_QUBITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Max-norm of `A - A†` accepted for a density matrix.
    pub hermitian: f64,
    /// Distance of the trace from one.
    pub trace: f64,
    /// Smallest eigenvalue accepted for a density matrix.
    pub psd: f64,
    /// Squared-norm deviation accepted for a state vector.
    pub normalization: f64,
    /// Max-norm of `A - A†` accepted by the eigensolver.
    pub eigen_input_hermitian: f64,
    /// Jacobi stops once the off-diagonal Frobenius norm falls below this
    /// fraction of the total Frobenius norm.
    pub jacobi_relative: f64,
    pub jacobi_max_sweeps: usize,
    /// Partial-transpose eigenvalues at or above `-zero_eigenvalue` count as
    /// zero.
    pub zero_eigenvalue: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        hermitian: 1e-12,
        trace: 1e-12,
        psd: 1e-10,
        normalization: 1e-12,
        eigen_input_hermitian: 1e-10,
        jacobi_relative: 1e-12,
        jacobi_max_sweeps: 100,
        zero_eigenvalue: 1e-10,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
