//! Bipartite entanglement of dephased states: exact partial-transpose
//! spectra over every cut, the closed forms they are checked against, the
//! all-cuts NPT test and threshold search.

mod critical;
mod cuts;
mod formulas;
mod oracle;

pub use critical::{critical_gamma, critical_gamma_with, MAX_BISECTIONS};
pub use cuts::{enumerate_cuts, BipartiteCut};
pub use formulas::{
    closed_form, cluster_negativity_formula, eta_pair, eta_triple, ghz_negativity_formula,
    w_negativity_formula, ClosedForm, FormulaTarget,
};
pub use oracle::{
    distillability_check, negativity_oracle, negativity_oracle_with, negativity_reports,
    DistillabilityVerdict, NegativityReport,
};

use crate::channel::{apply_dephasing, AggregateDephasing};
use crate::error::Result;
use crate::scalar::Real;
use crate::states::StateFamily;

/// Prepares `family`, dephases it with `agg`, and reports every cut in
/// `cuts` with the matching closed form attached where one exists.
pub fn analyze<T: Real>(
    family: &StateFamily,
    agg: &AggregateDephasing<T>,
    cuts: &[BipartiteCut],
) -> Result<Vec<NegativityReport<T>>> {
    let rho = apply_dephasing(&family.density(), agg)?;
    let reports = negativity_reports(&rho, cuts)?;
    reports
        .into_iter()
        .map(|r| {
            let f = closed_form(family.kind(), agg, &r.cut)?;
            Ok(r.with_formula(f))
        })
        .collect()
}
