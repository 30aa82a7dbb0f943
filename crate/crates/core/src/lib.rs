//! Collisional decoherence of multiqubit GHZ, W and linear cluster states.
//!
//! Each system qubit collides with fresh environment qubits through
//! controlled unitaries. After tracing out the environment, a qubit's
//! coherences shrink by `γ = Πλ` and rotate by `Φ = Σφ`, while populations
//! stay put. This crate builds the three state families, applies the
//! channel in microscopic and reduced form, and measures what survives with
//! exact partial-transpose spectra over every bipartite cut. The closed-form
//! negativities of each family sit next to the brute-force oracle so the two
//! can be compared directly.
//!
//! Everything numeric is generic over [`Real`] (`f64` or `f32`). The aliases
//! below fix the working precision to `f64`.
//!
//! ```
//! use decohere_core::{analyze, enumerate_cuts, AggregateDephasing, FamilyKind, StateFamily};
//!
//! let family = StateFamily::new(FamilyKind::Ghz, 3).unwrap();
//! let agg = AggregateDephasing::<f64>::homogeneous(3, 0.5).unwrap();
//! let reports = analyze(&family, &agg, &enumerate_cuts(3).unwrap()).unwrap();
//! for r in &reports {
//!     assert!((r.min_eigenvalue + 0.0625).abs() < 1e-12);
//! }
//! ```

pub mod channel;
pub mod density;
pub mod eigen;
pub mod entanglement;
pub mod error;
pub mod matrix;
pub mod properties;
pub mod qubits;
pub mod sampling;
pub mod scalar;
pub mod states;
pub mod tolerance;

pub use channel::{
    apply_dephasing, apply_microscopic_collision, apply_schedule, build_collision_unitary,
    schedule_aggregate, x_expectation, AggregateDephasing, CollisionParams, CollisionSchedule,
    MicroCollisionSpec,
};
pub use density::DensityMatrix;
pub use eigen::{hermitian_eigenvalues, min_eigenvalue};
pub use entanglement::{
    analyze, closed_form, cluster_negativity_formula, critical_gamma, distillability_check,
    enumerate_cuts, ghz_negativity_formula, negativity_oracle, w_negativity_formula, BipartiteCut,
    ClosedForm, DistillabilityVerdict, FormulaTarget, NegativityReport,
};
pub use error::{Error, Result};
pub use matrix::ComplexMatrix;
pub use num_complex::Complex;
pub use qubits::QubitSubset;
pub use scalar::Real;
pub use states::{make_cluster, make_ghz, make_w, FamilyKind, StateFamily, StateVector};
pub use tolerance::{Tolerances, DEFAULT_MAX_QUBITS};

pub type C64 = Complex<f64>;
pub type Matrix64 = ComplexMatrix<f64>;
pub type Density64 = DensityMatrix<f64>;
pub type State64 = StateVector<f64>;
pub type Schedule64 = CollisionSchedule<f64>;
pub type Aggregate64 = AggregateDephasing<f64>;
pub type Spec64 = MicroCollisionSpec<f64>;
pub type Report64 = NegativityReport<f64>;

pub type C32 = Complex<f32>;
pub type Matrix32 = ComplexMatrix<f32>;
pub type Density32 = DensityMatrix<f32>;
pub type State32 = StateVector<f32>;
pub type Aggregate32 = AggregateDephasing<f32>;
