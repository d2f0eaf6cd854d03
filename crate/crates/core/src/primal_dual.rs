//! The primal-dual growing/pruning procedure over the knapsack-cover LP.
//!
//! Growing keeps explicit sets `A_t` (jobs assigned at `t` or later) and the
//! accumulated left-hand side of every dual constraint `(j, s)`. Each
//! iteration raises one dual variable `y_{t, A_t}` until a constraint becomes
//! tight, then assigns that job to that slot. Pruning walks the assignments
//! backwards and drops those no longer needed.

use std::ops::RangeInclusive;

use num::{BigInt, BigRational, Zero};

use crate::demand::{demand_set, edd_schedule, ScheduleError};
use crate::local_ratio::SolveError;
use crate::model::{total_cost, DueDates, ExtValue, Instance, Schedule, Time};

/// An activated dual variable `y_{t, A}` with the snapshot of `A` at activation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualVariable {
    pub t: Time,
    /// 0-based job indices, sorted.
    pub set: Vec<usize>,
    pub value: BigRational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PruneOutcome {
    Kept,
    /// Cleared because the job is already assigned later.
    CoveredLater,
    /// Cleared because every slot of its S-set stays covered without it.
    Redundant,
}

impl PruneOutcome {
    pub fn as_str(self) -> &'static str {
        match self {
            PruneOutcome::Kept => "kept",
            PruneOutcome::CoveredLater => "covered",
            PruneOutcome::Redundant => "pruned",
        }
    }
}

/// One growing iteration plus the pruning verdict on the variable it set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdStep {
    /// 1-based.
    pub k: usize,
    pub t: Time,
    /// `A_{t^k}` at the start of the iteration.
    pub set: Vec<usize>,
    pub demand: usize,
    /// Amount by which `y_{t^k, A}` was raised.
    pub dual: BigRational,
    pub job: usize,
    pub slot: Time,
    /// Slots to which the job was added in this iteration.
    pub s_set: RangeInclusive<Time>,
    pub prune: PruneOutcome,
}

#[derive(Clone, Debug)]
pub struct PdResult {
    pub due_dates: DueDates,
    pub duals: Vec<DualVariable>,
    pub trace: Vec<PdStep>,
    pub schedule: Schedule,
    pub primal_cost: ExtValue,
    pub dual_objective: BigRational,
}

impl PdResult {
    pub fn nonzero_duals(&self) -> impl Iterator<Item = &DualVariable> {
        self.duals.iter().filter(|y| !y.value.is_zero())
    }

    /// `primal_cost / dual_objective` when both are finite and the dual is positive.
    pub fn gap(&self) -> Option<BigRational> {
        match &self.primal_cost {
            ExtValue::Finite(p) if !self.dual_objective.is_zero() => Some(p / &self.dual_objective),
            _ => None,
        }
    }
}

fn int(v: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn members(row: &[bool]) -> Vec<usize> {
    row.iter().enumerate().filter(|(_, &b)| b).map(|(j, _)| j).collect()
}

fn residual(inst: &Instance, t: Time, row: &[bool]) -> usize {
    let covered: usize = (0..inst.n()).filter(|&j| row[j]).map(|j| inst.ptime(j)).sum();
    (inst.horizon + 1).saturating_sub(t).saturating_sub(covered)
}

pub fn cheung_shmoys(inst: &Instance) -> Result<PdResult, SolveError> {
    let report = inst.validate();
    if !report.is_valid() {
        return Err(SolveError::InvalidInstance(report));
    }
    if inst.has_release_dates() {
        return Err(SolveError::HasReleaseDates);
    }
    let n = inst.n();
    let horizon = inst.horizon;
    let cap = n * horizon;
    // in_set[t][j]: j ∈ A_t, for t in 0..=T+1
    let mut in_set = vec![vec![false; n]; horizon + 2];
    let mut lhs = vec![vec![BigRational::zero(); horizon + 1]; n];
    let mut latest = vec![0usize; n];
    let mut duals = Vec::new();
    let mut trace: Vec<PdStep> = Vec::new();

    loop {
        let best = (1..=horizon)
            .rev()
            .map(|t| (t, residual(inst, t, &in_set[t])))
            .max_by_key(|&(t, d)| (d, t));
        let Some((t, d)) = best.filter(|&(_, d)| d > 0) else { break };
        let k = trace.len() + 1;
        if k > cap {
            return Err(SolveError::IterationCap(cap));
        }
        let eligible: Vec<usize> = (0..n).filter(|&j| !in_set[t][j]).collect();
        let mut raise: Option<BigRational> = None;
        for &j in &eligible {
            let h = int(inst.ptime(j).min(d));
            for (f, acc) in inst.costs[j].values().iter().zip(&lhs[j]).skip(t) {
                if let ExtValue::Finite(f) = f {
                    let slack = (f - acc) / &h;
                    if raise.as_ref().is_none_or(|r| slack < *r) {
                        raise = Some(slack);
                    }
                }
            }
        }
        let raise = raise.ok_or(SolveError::UnboundedAlpha { level: k, t_star: t })?;
        let mut tight: Option<(usize, Time)> = None;
        for &j in &eligible {
            let add = &raise * int(inst.ptime(j).min(d));
            for (s, acc) in lhs[j].iter_mut().enumerate().skip(t) {
                *acc += &add;
                if inst.costs[j][s] == ExtValue::Finite(acc.clone())
                    && tight.is_none_or(|(_, ts)| s > ts)
                {
                    tight = Some((j, s));
                }
            }
        }
        let (job, slot) = tight.ok_or(SolveError::EmptySupport { level: k })?;
        let set = members(&in_set[t]);
        duals.push(DualVariable { t, set: set.clone(), value: raise.clone() });
        let s_set = latest[job] + 1..=slot;
        for u in s_set.clone() {
            in_set[u][job] = true;
        }
        latest[job] = latest[job].max(slot);
        trace.push(PdStep { k, t, set, demand: d, dual: raise, job, slot, s_set, prune: PruneOutcome::Kept });
    }

    for step in trace.iter_mut().rev() {
        let j = step.job;
        if in_set[step.slot + 1][j] {
            step.prune = PruneOutcome::CoveredLater;
            continue;
        }
        let redundant = step.s_set.clone().all(|s| {
            let without: usize =
                (0..n).filter(|&i| i != j && in_set[s][i]).map(|i| inst.ptime(i)).sum();
            without + s > horizon
        });
        if redundant {
            step.prune = PruneOutcome::Redundant;
            for s in step.s_set.clone() {
                in_set[s][j] = false;
            }
        }
    }

    let mut due = vec![0usize; n];
    for step in trace.iter().filter(|s| s.prune == PruneOutcome::Kept) {
        due[step.job] = due[step.job].max(step.slot);
    }
    let due_dates = DueDates::new(due);
    let schedule = edd_schedule(inst, &due_dates).map_err(|e: ScheduleError| SolveError::Schedule(e))?;
    let primal_cost = total_cost(inst, &due_dates, &inst.costs).expect("due dates stay inside the horizon");
    let dual_objective = dual_objective(&duals, inst);
    Ok(PdResult { due_dates, duals, trace, schedule, primal_cost, dual_objective })
}

/// `Σ y_{t,A} · D(t, A)`.
pub fn dual_objective(duals: &[DualVariable], inst: &Instance) -> BigRational {
    duals
        .iter()
        .filter(|y| !y.value.is_zero())
        .map(|y| &y.value * int(demand_set(inst, y.t, &y.set).unwrap_or(0)))
        .fold(BigRational::zero(), |a, b| a + b)
}

/// Every `y ≥ 0` and `Σ_{t ≤ s} Σ_{A ∌ j} p_j(t, A) y_{t,A} ≤ f_j(s)` for all `(j, s)`.
pub fn check_dual_feasibility(duals: &[DualVariable], inst: &Instance) -> bool {
    if duals.iter().any(|y| y.value < BigRational::zero()) {
        return false;
    }
    let demands: Vec<usize> = duals.iter().map(|y| demand_set(inst, y.t, &y.set).unwrap_or(0)).collect();
    (0..inst.n()).all(|j| {
        (1..=inst.horizon).all(|s| {
            let total = duals
                .iter()
                .zip(&demands)
                .filter(|(y, _)| y.t <= s && !y.set.contains(&j))
                .map(|(y, &d)| &y.value * int(inst.ptime(j).min(d)))
                .fold(BigRational::zero(), |a, b| a + b);
            inst.costs[j][s] >= ExtValue::Finite(total)
        })
    })
}

/// One positive dual and the covering mass the final due dates put on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverEntry {
    pub t: Time,
    pub set: Vec<usize>,
    /// `Σ_{j: d_j ≥ t, j ∉ A} p_j(t, A)`.
    pub sum: usize,
    pub demand: usize,
    pub ratio: BigRational,
    pub violates: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverReport {
    pub entries: Vec<CoverEntry>,
}

impl CoverReport {
    pub fn violations(&self) -> impl Iterator<Item = &CoverEntry> {
        self.entries.iter().filter(|e| e.violates)
    }

    pub fn holds(&self) -> bool {
        self.violations().next().is_none()
    }

    pub fn max_ratio(&self) -> Option<&BigRational> {
        self.entries.iter().map(|e| &e.ratio).max()
    }
}

/// Tests `Σ_{j ∈ Ā_t ∖ A} p_j(t, A) ≤ 2 D(t, A)` for every positive dual,
/// where `Ā_t` holds the jobs whose final due date is at least `t`.
pub fn check_appendix_property(result: &PdResult, inst: &Instance) -> CoverReport {
    let two = int(2);
    let entries = result
        .nonzero_duals()
        .map(|y| {
            let d = demand_set(inst, y.t, &y.set).unwrap_or(0);
            let sum: usize = (0..inst.n())
                .filter(|&j| result.due_dates[j] >= y.t && !y.set.contains(&j))
                .map(|j| inst.ptime(j).min(d))
                .sum();
            let ratio = if d == 0 { int(0) } else { BigRational::new(BigInt::from(sum), BigInt::from(d)) };
            CoverEntry { t: y.t, set: y.set.clone(), sum, demand: d, violates: ratio > two, ratio }
        })
        .collect();
    CoverReport { entries }
}
