//! Exact optimum by enumerating completion orders.
//!
//! For a fixed priority order the preemptive priority schedule (each slot runs
//! the released unfinished job earliest in the order) minimizes every
//! completion time at once, so with non-decreasing costs the best order gives
//! the optimum. A job's completion depends only on the jobs before it, which
//! lets a depth-first search over prefixes share work.

use thiserror::Error;

use crate::model::{DueDates, ExtValue, Instance, Schedule, Time};

pub const DEFAULT_CAP: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("{n} jobs exceed the oracle cap of {cap}")]
    TooManyJobs { n: usize, cap: usize },
    #[error("due-date enumeration needs n ≤ 4 and T ≤ 12 (got n={n}, T={horizon})")]
    TooLarge { n: usize, horizon: Time },
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub opt_cost: ExtValue,
    pub witness: Schedule,
    /// Priority order (0-based) that realizes the optimum.
    pub order: Vec<usize>,
}

pub fn brute_force_opt(inst: &Instance) -> Result<OracleResult, OracleError> {
    brute_force_opt_capped(inst, DEFAULT_CAP)
}

pub fn brute_force_opt_capped(inst: &Instance, cap: usize) -> Result<OracleResult, OracleError> {
    let n = inst.n();
    if n > cap {
        return Err(OracleError::TooManyJobs { n, cap });
    }
    let mut search = Search {
        inst,
        occupied: vec![None; inst.horizon + inst.total_ptime() + 1],
        used: vec![false; n],
        order: Vec::with_capacity(n),
        best: None,
    };
    search.dfs(ExtValue::zero());
    let (opt_cost, order) = search.best.expect("at least one order exists");
    let witness = priority_schedule(inst, &order);
    Ok(OracleResult { opt_cost, witness, order })
}

struct Search<'a> {
    inst: &'a Instance,
    /// `occupied[s - 1]` holds the job run in slot `s`.
    occupied: Vec<Option<usize>>,
    used: Vec<bool>,
    order: Vec<usize>,
    best: Option<(ExtValue, Vec<usize>)>,
}

impl Search<'_> {
    fn dfs(&mut self, cost: ExtValue) {
        if let Some((b, _)) = &self.best {
            if cost >= *b {
                // Costs are non-negative, so a prefix can only get worse; equal
                // prefixes are pruned to keep the lexicographically first order.
                return;
            }
        }
        if self.order.len() == self.inst.n() {
            self.best = Some((cost, self.order.clone()));
            return;
        }
        for j in 0..self.inst.n() {
            if self.used[j] {
                continue;
            }
            let slots = self.place(j);
            let completion = *slots.last().expect("ptime ≥ 1") + 1;
            let f = self.inst.costs[j].get(completion).cloned().unwrap_or(ExtValue::Infinity);
            self.used[j] = true;
            self.order.push(j);
            self.dfs(cost.clone() + f);
            self.order.pop();
            self.used[j] = false;
            for s in slots {
                self.occupied[s] = None;
            }
        }
    }

    /// Fills the earliest free slots after the release date; returns their indices.
    fn place(&mut self, j: usize) -> Vec<usize> {
        let mut need = self.inst.ptime(j);
        let mut taken = Vec::with_capacity(need);
        let mut s = self.inst.rdate(j);
        while need > 0 {
            if self.occupied[s].is_none() {
                self.occupied[s] = Some(j);
                taken.push(s);
                need -= 1;
            }
            s += 1;
        }
        taken
    }
}

/// Preemptive priority schedule for `order`.
pub fn priority_schedule(inst: &Instance, order: &[usize]) -> Schedule {
    let mut occupied: Vec<Option<usize>> = vec![None; inst.horizon];
    for &j in order {
        let mut need = inst.ptime(j);
        let mut s = inst.rdate(j);
        while need > 0 {
            if s >= occupied.len() {
                occupied.push(None);
            }
            if occupied[s].is_none() {
                occupied[s] = Some(j);
                need -= 1;
            }
            s += 1;
        }
    }
    Schedule::from_slots(inst.n(), occupied, true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExhaustiveReport {
    pub checked: usize,
    pub counterexamples: Vec<DueDates>,
}

impl ExhaustiveReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Evaluates `predicate` on every σ with `r_j ≤ σ_j ≤ T`.
pub fn exhaustive_duedate_check(
    inst: &Instance,
    mut predicate: impl FnMut(&Instance, &DueDates) -> bool,
) -> Result<ExhaustiveReport, OracleError> {
    let n = inst.n();
    if n > 4 || inst.horizon > 12 {
        return Err(OracleError::TooLarge { n, horizon: inst.horizon });
    }
    let mut current: Vec<Time> = (0..n).map(|j| inst.rdate(j)).collect();
    let mut report = ExhaustiveReport { checked: 0, counterexamples: Vec::new() };
    loop {
        let sigma = DueDates::new(current.clone());
        report.checked += 1;
        if !predicate(inst, &sigma) {
            report.counterexamples.push(sigma);
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == n {
                return Ok(report);
            }
            if current[i] < inst.horizon {
                current[i] += 1;
                break;
            }
            current[i] = inst.rdate(i);
            i += 1;
        }
    }
}
