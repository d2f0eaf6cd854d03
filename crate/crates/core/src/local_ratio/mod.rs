//! Local-ratio due-date growing.
//!
//! Both solvers share one skeleton. While the assignment is infeasible, pick a
//! point of maximum residual demand, build the step-shaped model cost `ĝ`,
//! peel off the largest multiple `α·ĝ` that keeps the residual cost
//! non-negative, and move one job whose residual just hit zero to that slot.
//! Once feasible, the raises are undone in reverse order whenever feasibility
//! survives the undo.
//!
//! The recursive formulation is run as a growing loop followed by a LIFO undo
//! loop: each recursion level does exactly one raise before the call and one
//! optional revert after it.

mod certify;
mod plain;
mod release;

use num::{BigInt, BigRational, Zero};
use thiserror::Error;

use crate::demand::{DemandPoint, ScheduleError};
use crate::model::{total_cost, CostFunction, DueDates, ExtValue, Instance, Schedule, Time, ValidationReport};

pub use certify::{
    check_level_bound, check_level_bound_rd, check_structure, LevelBoundReport, LevelCheck,
    StructureReport,
};
pub use plain::{build_model_costs, lr_cs};
pub use release::{build_model_costs_rd, lr_cs_rd};

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("invalid instance: {0}")]
    InvalidInstance(ValidationReport),
    #[error("this algorithm needs an instance without release dates")]
    HasReleaseDates,
    #[error("level {level}: model cost has empty support")]
    EmptySupport { level: usize },
    #[error("level {level}: every eligible job has infinite residual cost from t={t_star} on")]
    UnboundedAlpha { level: usize, t_star: Time },
    #[error("level {level}: residual cost of job {job} would go negative at t={t}")]
    NegativeResidual { level: usize, job: usize, t: Time },
    #[error("no demand point with positive residual demand on an infeasible assignment")]
    NoDemandPoint,
    #[error("growing phase exceeded {0} iterations")]
    IterationCap(usize),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
}

/// A step-shaped model cost: `ĝ_i(t) = heights[i]` for `t ≥ t_star`, else 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelCosts {
    pub t_star: Time,
    pub heights: Vec<usize>,
}

impl ModelCosts {
    pub fn value(&self, j: usize, t: Time) -> usize {
        if t >= self.t_star {
            self.heights[j]
        } else {
            0
        }
    }

    /// Jobs with `ĝ_j ≢ 0`.
    pub fn support(&self) -> Vec<usize> {
        (0..self.heights.len()).filter(|&j| self.heights[j] > 0).collect()
    }
}

/// Result of peeling `α·ĝ` off a cost vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alpha {
    pub value: BigRational,
    /// `(job, slot)` pairs with `g_j(s) = α·ĝ_j(s) > 0`-weighted, i.e. tight after the subtraction.
    pub tight: Vec<(usize, Time)>,
}

/// The largest `α` with `g - α·ĝ ≥ 0`, and the pairs where that bound is attained.
///
/// Infinite slots are skipped. `Err` carries `true` when the support is empty
/// and `false` when every support slot is infinite.
pub fn compute_alpha(g: &[CostFunction], model: &ModelCosts) -> Result<Alpha, bool> {
    let support = model.support();
    if support.is_empty() {
        return Err(true);
    }
    // ĝ_j is constant on its support, so the ratio is minimized at min_t g_j(t).
    let mut best: Option<BigRational> = None;
    for &j in &support {
        let min_g = g[j].values().iter().skip(model.t_star).filter_map(ExtValue::as_finite).min();
        if let Some(m) = min_g {
            let ratio = m / BigRational::from_integer(BigInt::from(model.heights[j]));
            if best.as_ref().is_none_or(|b| ratio < *b) {
                best = Some(ratio);
            }
        }
    }
    let value = best.ok_or(false)?;
    let mut tight = Vec::new();
    for &j in &support {
        let target = ExtValue::Finite(&value * BigRational::from_integer(BigInt::from(model.heights[j])));
        for (t, v) in g[j].values().iter().enumerate().skip(model.t_star) {
            if *v == target {
                tight.push((j, t));
            }
        }
    }
    Ok(Alpha { value, tight })
}

/// Largest slot first, then the smallest job index.
pub fn select_tight_pair(tight: &[(usize, Time)]) -> Option<(usize, Time)> {
    tight.iter().copied().max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UndoOutcome {
    Kept,
    Reverted,
}

impl UndoOutcome {
    pub fn as_str(self) -> &'static str {
        match self {
            UndoOutcome::Kept => "kept",
            UndoOutcome::Reverted => "reverted",
        }
    }
}

/// One recursion level of the local-ratio solver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionStep {
    /// 1-based.
    pub level: usize,
    pub t_star: Time,
    pub r_star: Option<Time>,
    /// Residual demand at the chosen point.
    pub demand: usize,
    /// Jobs already covering `t_star` (restricted to releases `≥ r_star` when present).
    pub covered: usize,
    pub alpha: BigRational,
    pub model: ModelCosts,
    /// Job (0-based) whose due date was raised, and its new and previous due dates.
    pub job: usize,
    pub time: Time,
    pub previous: Time,
    pub undo: UndoOutcome,
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub initial_sigma: DueDates,
    pub final_sigma: DueDates,
    pub schedule: Schedule,
    /// `Σ_j f_j(σ_j)` under the input costs.
    pub primal_cost: ExtValue,
    /// `Σ_k α_k · D_k`.
    pub lower_bound: BigRational,
    pub trace: Vec<DecompositionStep>,
    /// Residual cost vector after the last decomposition.
    pub residual: Vec<CostFunction>,
}

impl SolveResult {
    pub fn levels(&self) -> usize {
        self.trace.len()
    }

    /// `primal_cost / lower_bound` when both are finite and the bound is positive.
    pub fn ratio(&self) -> Option<BigRational> {
        match &self.primal_cost {
            ExtValue::Finite(p) if !self.lower_bound.is_zero() => Some(p / &self.lower_bound),
            _ => None,
        }
    }
}

/// The two flavours of residual demand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Flavour {
    Plain,
    Release,
}

impl Flavour {
    fn feasible(self, inst: &Instance, sigma: &DueDates) -> bool {
        match self {
            Flavour::Plain => crate::demand::is_feasible_plain(inst, sigma),
            Flavour::Release => crate::demand::is_feasible_rd(inst, sigma),
        }
    }

    fn max_point(self, inst: &Instance, sigma: &DueDates) -> Option<DemandPoint> {
        match self {
            Flavour::Plain => crate::demand::max_demand_point_plain(inst, sigma),
            Flavour::Release => crate::demand::max_demand_point_rd(inst, sigma),
        }
    }

    fn model(self, inst: &Instance, sigma: &DueDates, point: &DemandPoint) -> ModelCosts {
        match self {
            Flavour::Plain => plain::model_for_demand(inst, sigma, point.t, point.value),
            Flavour::Release => {
                release::model_for_demand(inst, sigma, point.r.unwrap_or(0), point.t, point.value)
            }
        }
    }

    fn covered(self, inst: &Instance, sigma: &DueDates, point: &DemandPoint) -> usize {
        let r = point.r.unwrap_or(0);
        (0..inst.n()).filter(|&j| sigma[j] >= point.t && inst.rdate(j) >= r).count()
    }

    fn schedule(self, inst: &Instance, sigma: &DueDates) -> Result<Schedule, ScheduleError> {
        match self {
            Flavour::Plain => crate::demand::edd_schedule(inst, sigma),
            Flavour::Release => crate::demand::edd_schedule_preemptive(inst, sigma),
        }
    }
}

fn solve(inst: &Instance, flavour: Flavour) -> Result<SolveResult, SolveError> {
    let report = inst.validate();
    if !report.is_valid() {
        return Err(SolveError::InvalidInstance(report));
    }
    let cap = inst.n() * inst.horizon;
    let initial_sigma = inst.initial_due_dates();
    let mut sigma = initial_sigma.clone();
    let mut g = inst.costs.clone();
    let mut trace: Vec<DecompositionStep> = Vec::new();

    while !flavour.feasible(inst, &sigma) {
        let level = trace.len() + 1;
        if level > cap {
            return Err(SolveError::IterationCap(cap));
        }
        let point = flavour.max_point(inst, &sigma).ok_or(SolveError::NoDemandPoint)?;
        if point.value == 0 {
            return Err(SolveError::NoDemandPoint);
        }
        let model = flavour.model(inst, &sigma, &point);
        let alpha = compute_alpha(&g, &model).map_err(|empty| {
            if empty {
                SolveError::EmptySupport { level }
            } else {
                SolveError::UnboundedAlpha { level, t_star: point.t }
            }
        })?;
        let (job, time) = select_tight_pair(&alpha.tight).ok_or(SolveError::EmptySupport { level })?;
        if !alpha.value.is_zero() {
            for i in model.support() {
                let amount = &alpha.value * BigRational::from_integer(BigInt::from(model.heights[i]));
                g[i].subtract_from(model.t_star, &amount)
                    .map_err(|t| SolveError::NegativeResidual { level, job: i + 1, t })?;
            }
        }
        debug_assert!(g[job][time].is_zero());
        trace.push(DecompositionStep {
            level,
            t_star: point.t,
            r_star: point.r,
            demand: point.value,
            covered: flavour.covered(inst, &sigma, &point),
            alpha: alpha.value,
            model,
            job,
            time,
            previous: sigma[job],
            undo: UndoOutcome::Kept,
        });
        sigma.set(job, time);
    }

    let lower_bound = trace
        .iter()
        .map(|s| &s.alpha * BigRational::from_integer(BigInt::from(s.demand)))
        .fold(BigRational::zero(), |acc, x| acc + x);

    for step in trace.iter_mut().rev() {
        let candidate = sigma.with(step.job, step.previous);
        if flavour.feasible(inst, &candidate) {
            sigma = candidate;
            step.undo = UndoOutcome::Reverted;
        }
    }

    let schedule = flavour.schedule(inst, &sigma)?;
    let primal_cost = total_cost(inst, &sigma, &inst.costs)
        .expect("due dates stay inside the horizon");
    Ok(SolveResult {
        initial_sigma,
        final_sigma: sigma,
        schedule,
        primal_cost,
        lower_bound,
        trace,
        residual: g,
    })
}
