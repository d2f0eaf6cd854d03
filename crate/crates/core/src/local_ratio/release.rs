//! Local-ratio solver with release dates, measured on intervals `[r, t)`.

use super::{solve, Flavour, ModelCosts, SolveError, SolveResult};
use crate::demand::{demand_rd, DemandError};
use crate::model::{DueDates, Instance, Time};

/// `ĝ_i(t) = p_i(r*, t*, σ)` for `t ≥ t*` when `r* ≤ r_i` and `σ_i < t*`.
pub fn build_model_costs_rd(
    inst: &Instance,
    sigma: &DueDates,
    r_star: Time,
    t_star: Time,
) -> Result<ModelCosts, DemandError> {
    let d = demand_rd(inst, r_star, t_star, sigma)?;
    Ok(model_for_demand(inst, sigma, r_star, t_star, d))
}

pub(super) fn model_for_demand(
    inst: &Instance,
    sigma: &DueDates,
    r_star: Time,
    t_star: Time,
    d: usize,
) -> ModelCosts {
    let heights = (0..inst.n())
        .map(|i| {
            let r = inst.rdate(i);
            if r_star <= r && r < t_star && sigma[i] < t_star {
                inst.ptime(i).min(d)
            } else {
                0
            }
        })
        .collect();
    ModelCosts { t_star, heights }
}

/// Runs the solver from `σ = r`. The output admits a preemptive EDD schedule.
pub fn lr_cs_rd(inst: &Instance) -> Result<SolveResult, SolveError> {
    solve(inst, Flavour::Release)
}
