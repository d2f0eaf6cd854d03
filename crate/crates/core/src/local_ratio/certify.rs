//! Post-hoc certificates for a local-ratio run, rebuilt from its trace.

use num::{BigInt, BigRational, Zero};

use super::{DecompositionStep, SolveResult, UndoOutcome};
use crate::demand::{demand, demand_rd_unchecked, is_feasible};
use crate::model::{DueDates, Instance};

/// Per-level check of `Σ_{i: σ_i < t* ≤ ρ_i} p_i(t*, σ) ≤ factor · D(t*, σ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelCheck {
    pub level: usize,
    pub lhs: usize,
    pub demand: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelBoundReport {
    pub factor: usize,
    pub levels: Vec<LevelCheck>,
    /// Largest `lhs / D` seen.
    pub max_ratio: Option<BigRational>,
    /// Problems with the trace itself, e.g. a recorded demand that disagrees
    /// with the recomputed one.
    pub problems: Vec<String>,
}

impl LevelBoundReport {
    pub fn passed(&self) -> bool {
        self.problems.is_empty() && self.levels.iter().all(|l| l.ok)
    }
}

/// `σ^(k)` for `k = 1..=K+1` and `ρ^(k)` for `k = 1..=K+1`, 0-based in the vectors.
struct Chains {
    sigmas: Vec<DueDates>,
    rhos: Vec<DueDates>,
}

fn replay(result: &SolveResult, problems: &mut Vec<String>) -> Chains {
    let mut sigma = result.initial_sigma.clone();
    let mut sigmas = vec![sigma.clone()];
    for step in &result.trace {
        if sigma[step.job] != step.previous {
            problems.push(format!(
                "level {}: recorded previous due date {} but replay has {}",
                step.level, step.previous, sigma[step.job]
            ));
        }
        sigma = sigma.with(step.job, step.time);
        sigmas.push(sigma.clone());
    }
    let k = result.trace.len();
    let mut rhos = vec![DueDates::zeros(0); k + 1];
    rhos[k] = sigmas[k].clone();
    for (i, step) in result.trace.iter().enumerate().rev() {
        rhos[i] = match step.undo {
            UndoOutcome::Reverted => rhos[i + 1].with(step.job, step.previous),
            UndoOutcome::Kept => rhos[i + 1].clone(),
        };
    }
    if rhos[0] != result.final_sigma {
        problems.push(format!("undo replay ends at {} but the result reports {}", rhos[0], result.final_sigma));
    }
    Chains { sigmas, rhos }
}

fn level_bound(
    inst: &Instance,
    result: &SolveResult,
    factor: usize,
    demand_at: impl Fn(&DecompositionStep, &DueDates) -> usize,
    counted: impl Fn(usize, &DecompositionStep) -> bool,
) -> LevelBoundReport {
    let mut problems = Vec::new();
    let chains = replay(result, &mut problems);
    let mut levels = Vec::with_capacity(result.trace.len());
    let mut max_ratio: Option<BigRational> = None;
    for (k, step) in result.trace.iter().enumerate() {
        let sigma = &chains.sigmas[k];
        let rho = &chains.rhos[k];
        let d = demand_at(step, sigma);
        if d != step.demand {
            problems.push(format!("level {}: recorded demand {} but recomputed {}", step.level, step.demand, d));
        }
        let lhs: usize = (0..inst.n())
            .filter(|&i| counted(i, step) && sigma[i] < step.t_star && step.t_star <= rho[i])
            .map(|i| inst.ptime(i).min(d))
            .sum();
        if d > 0 {
            let ratio = BigRational::new(BigInt::from(lhs), BigInt::from(d));
            if max_ratio.as_ref().is_none_or(|m| ratio > *m) {
                max_ratio = Some(ratio);
            }
        }
        levels.push(LevelCheck { level: step.level, lhs, demand: d, ok: lhs <= factor * d });
    }
    LevelBoundReport { factor, levels, max_ratio, problems }
}

/// Level bound with factor 4 for a run of the solver without release dates.
pub fn check_level_bound(inst: &Instance, result: &SolveResult) -> LevelBoundReport {
    level_bound(
        inst,
        result,
        4,
        |step, sigma| demand(inst, step.t_star, sigma).unwrap_or(usize::MAX),
        |_, _| true,
    )
}

/// Level bound with factor `4κ` for a run of the release-date solver.
pub fn check_level_bound_rd(inst: &Instance, result: &SolveResult) -> LevelBoundReport {
    level_bound(
        inst,
        result,
        4 * inst.kappa(),
        |step, sigma| demand_rd_unchecked(inst, step.r_star.unwrap_or(0), step.t_star, sigma),
        |i, step| inst.rdate(i) >= step.r_star.unwrap_or(0),
    )
}

/// Structural invariants of a local-ratio run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StructureReport {
    /// `Σ_k α_k ĝ^(k) ≤ f` pointwise.
    pub dual_feasible: bool,
    /// Reported residual equals `f - Σ_k α_k ĝ^(k)` and is non-negative.
    pub residual_consistent: bool,
    /// `σ^(k) ≤ σ^(k+1)`, `ρ^(k) ≤ ρ^(k+1)`, `σ^(k) ≤ ρ^(k)`, one coordinate per step.
    pub chains_monotone: bool,
    /// `g^(k)_j(σ^(k)_j) = 0` for every level and job.
    pub zero_at_due: bool,
    /// At most `n·T` levels.
    pub within_iteration_bound: bool,
    /// Output is feasible and its schedule meets it.
    pub output_feasible: bool,
    pub problems: Vec<String>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.dual_feasible
            && self.residual_consistent
            && self.chains_monotone
            && self.zero_at_due
            && self.within_iteration_bound
            && self.output_feasible
            && self.problems.is_empty()
    }
}

fn charge(step: &DecompositionStep, j: usize, t: usize) -> BigRational {
    let h = step.model.value(j, t);
    if h == 0 {
        BigRational::zero()
    } else {
        &step.alpha * BigRational::from_integer(BigInt::from(h))
    }
}

pub fn check_structure(inst: &Instance, result: &SolveResult) -> StructureReport {
    let mut problems = Vec::new();
    let chains = replay(result, &mut problems);
    let trace = &result.trace;

    let mut dual_feasible = true;
    let mut residual_consistent = result.residual.len() == inst.n();
    for j in 0..inst.n() {
        for t in 0..=inst.horizon {
            let total: BigRational = trace.iter().map(|s| charge(s, j, t)).fold(BigRational::zero(), |a, b| a + b);
            let f = &inst.costs[j][t];
            match f.checked_sub(&total) {
                Some(rest) => {
                    if residual_consistent && result.residual[j][t] != rest {
                        residual_consistent = false;
                        problems.push(format!("job {} t={}: residual disagrees with replay", j + 1, t));
                    }
                }
                None => {
                    dual_feasible = false;
                    problems.push(format!("job {} t={}: charged {} exceeds cost {}", j + 1, t, total, f));
                }
            }
        }
    }
    if result.residual.iter().any(|g| !g.is_nonnegative()) {
        residual_consistent = false;
        problems.push("negative residual cost".into());
    }

    let mut chains_monotone = true;
    for k in 0..trace.len() {
        let (a, b) = (&chains.sigmas[k], &chains.sigmas[k + 1]);
        let changed: Vec<usize> = (0..inst.n()).filter(|&j| a[j] != b[j]).collect();
        if !a.le(b) || changed.len() != 1 {
            chains_monotone = false;
            problems.push(format!("level {}: growing step is not a single raise", k + 1));
        }
        let (ra, rb) = (&chains.rhos[k], &chains.rhos[k + 1]);
        if !ra.le(rb) {
            chains_monotone = false;
            problems.push(format!("level {}: undo chain not monotone", k + 1));
        }
        if (0..inst.n()).filter(|&j| ra[j] != rb[j]).count() > 1 {
            chains_monotone = false;
            problems.push(format!("level {}: undo touches more than one job", k + 1));
        }
    }
    for (k, (s, r)) in chains.sigmas.iter().zip(&chains.rhos).enumerate() {
        if !s.le(r) {
            chains_monotone = false;
            problems.push(format!("level {}: σ exceeds ρ", k + 1));
        }
    }

    let mut zero_at_due = true;
    for (k, sigma) in chains.sigmas.iter().enumerate() {
        for j in 0..inst.n() {
            let due = sigma[j];
            let charged: BigRational =
                trace[..k].iter().map(|s| charge(s, j, due)).fold(BigRational::zero(), |a, b| a + b);
            let left = inst.costs[j][due].checked_sub(&charged);
            if left.as_ref().is_none_or(|v| !v.is_zero()) {
                zero_at_due = false;
                problems.push(format!("level {}: job {} has nonzero residual at its due date {}", k + 1, j + 1, due));
            }
        }
    }

    let within_iteration_bound = trace.len() <= inst.n() * inst.horizon;
    if !within_iteration_bound {
        problems.push(format!("{} levels exceed n·T = {}", trace.len(), inst.n() * inst.horizon));
    }
    let output_feasible = is_feasible(inst, &result.final_sigma)
        && result.schedule.meets(&result.final_sigma)
        && result.schedule.check(inst).is_ok();
    if !output_feasible {
        problems.push("output due dates are infeasible or not met by the schedule".into());
    }
    let expected_cost = crate::model::total_cost(inst, &result.final_sigma, &inst.costs).ok();
    if expected_cost.as_ref() != Some(&result.primal_cost) {
        problems.push("reported primal cost disagrees with the due dates".into());
    }

    StructureReport {
        dual_feasible,
        residual_consistent,
        chains_monotone,
        zero_at_due,
        within_iteration_bound,
        output_feasible,
        problems,
    }
}
