//! Local-ratio solver for instances where every job is released at time 0.

use super::{solve, Flavour, ModelCosts, SolveError, SolveResult};
use crate::demand::{demand, DemandError};
use crate::model::{DueDates, Instance, Time};

/// `ĝ_i(t) = p_i(t*, σ)` for `t ≥ t*` when `σ_i < t*`, zero otherwise.
pub fn build_model_costs(inst: &Instance, sigma: &DueDates, t_star: Time) -> Result<ModelCosts, DemandError> {
    let d = demand(inst, t_star, sigma)?;
    Ok(model_for_demand(inst, sigma, t_star, d))
}

pub(super) fn model_for_demand(inst: &Instance, sigma: &DueDates, t_star: Time, d: usize) -> ModelCosts {
    let heights = (0..inst.n())
        .map(|i| if sigma[i] < t_star { inst.ptime(i).min(d) } else { 0 })
        .collect();
    ModelCosts { t_star, heights }
}

/// Runs the local-ratio solver. Output due dates are feasible and the
/// non-preemptive EDD schedule meets them.
pub fn lr_cs(inst: &Instance) -> Result<SolveResult, SolveError> {
    if inst.has_release_dates() {
        return Err(SolveError::HasReleaseDates);
    }
    solve(inst, Flavour::Plain)
}
