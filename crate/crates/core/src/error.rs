use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A result would need more qubits than the configured capacity.
    #[error("capacity exceeded: {requested} qubits requested, limit is {limit}")]
    Capacity { requested: usize, limit: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix dimension {0} is not a power of two")]
    NotQubitDimension(usize),

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("qubit index {index} out of range 1..={n_qubits}")]
    QubitIndex { index: usize, n_qubits: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("trace is {0}, expected 1")]
    Trace(f64),

    #[error("not positive semidefinite (smallest eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("state is not normalized (squared norm {0})")]
    Normalization(f64),

    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("invalid collision parameter: {0}")]
    InvalidParameter(String),

    #[error("Jacobi iteration did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("no closed form available: {0}")]
    FormulaUnavailable(String),

    #[error("interval [{lo}, {hi}] does not bracket an entanglement transition")]
    Bracket { lo: f64, hi: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
