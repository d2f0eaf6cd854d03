use std::collections::BTreeSet;
use std::fmt;
use std::ops::Index;

use num::BigRational;
use thiserror::Error;

use super::value::ExtValue;

/// Time slots are 1-based; `0` is the "no due date yet" state.
pub type Time = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Job {
    /// 1-based, contiguous.
    pub id: usize,
    pub ptime: usize,
    pub rdate: usize,
}

impl Job {
    pub fn new(id: usize, ptime: usize, rdate: usize) -> Self {
        Job { id, ptime, rdate }
    }
}

/// Dense cost table over `t = 0..=T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostFunction {
    values: Vec<ExtValue>,
}

impl CostFunction {
    pub fn new(values: Vec<ExtValue>) -> Self {
        CostFunction { values }
    }

    pub fn zero(horizon: Time) -> Self {
        CostFunction { values: vec![ExtValue::zero(); horizon + 1] }
    }

    /// Builds a table of length `horizon + 1` from a closure.
    pub fn from_fn(horizon: Time, f: impl FnMut(Time) -> ExtValue) -> Self {
        CostFunction { values: (0..=horizon).map(f).collect() }
    }

    pub fn values(&self) -> &[ExtValue] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn at(&self, t: Time) -> &ExtValue {
        &self.values[t]
    }

    pub fn get(&self, t: Time) -> Option<&ExtValue> {
        self.values.get(t)
    }

    pub fn set(&mut self, t: Time, v: ExtValue) {
        self.values[t] = v;
    }

    /// Subtracts `amount` from every slot `t >= from`. Returns the first slot
    /// that would go negative, leaving the table untouched in that case.
    pub fn subtract_from(&mut self, from: Time, amount: &BigRational) -> Result<(), Time> {
        let mut out = Vec::with_capacity(self.values.len().saturating_sub(from));
        for (t, v) in self.values.iter().enumerate().skip(from) {
            out.push(v.checked_sub(amount).ok_or(t)?);
        }
        for (slot, v) in self.values.iter_mut().skip(from).zip(out) {
            *slot = v;
        }
        Ok(())
    }

    /// First `t` with `values[t] > values[t + 1]`, if any.
    pub fn first_decrease(&self) -> Option<Time> {
        self.values.windows(2).position(|w| w[0] > w[1])
    }

    pub fn is_monotone(&self) -> bool {
        self.first_decrease().is_none()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|v| !v.is_negative())
    }
}

impl Index<Time> for CostFunction {
    type Output = ExtValue;

    fn index(&self, t: Time) -> &ExtValue {
        &self.values[t]
    }
}

/// A due-date assignment, one entry per job (0-based job index).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DueDates(Vec<Time>);

impl DueDates {
    pub fn new(v: Vec<Time>) -> Self {
        DueDates(v)
    }

    pub fn zeros(n: usize) -> Self {
        DueDates(vec![0; n])
    }

    pub fn as_slice(&self) -> &[Time] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn set(&mut self, j: usize, t: Time) {
        self.0[j] = t;
    }

    /// `(σ_{-j}, t)`: a copy with job `j` moved to `t`.
    pub fn with(&self, j: usize, t: Time) -> DueDates {
        let mut v = self.0.clone();
        v[j] = t;
        DueDates(v)
    }

    /// Pointwise `self <= other`.
    pub fn le(&self, other: &DueDates) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn iter(&self) -> impl Iterator<Item = Time> + '_ {
        self.0.iter().copied()
    }
}

impl Index<usize> for DueDates {
    type Output = Time;

    fn index(&self, j: usize) -> &Time {
        &self.0[j]
    }
}

impl From<Vec<Time>> for DueDates {
    fn from(v: Vec<Time>) -> Self {
        DueDates(v)
    }
}

impl fmt::Display for DueDates {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", t)?;
        }
        f.write_str(")")
    }
}

/// A single machine instance: jobs, cost tables and the time horizon.
///
/// Jobs are stored in id order, so job `j` (0-based index) has id `j + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub jobs: Vec<Job>,
    pub costs: Vec<CostFunction>,
    pub horizon: Time,
}

impl Instance {
    /// Builds an instance with the canonical horizon. Cost tables are taken as given.
    pub fn new(jobs: Vec<Job>, costs: Vec<CostFunction>) -> Self {
        let horizon = canonical_horizon(&jobs);
        Instance { jobs, costs, horizon }
    }

    pub fn n(&self) -> usize {
        self.jobs.len()
    }

    pub fn ptime(&self, j: usize) -> usize {
        self.jobs[j].ptime
    }

    pub fn rdate(&self, j: usize) -> Time {
        self.jobs[j].rdate
    }

    pub fn total_ptime(&self) -> usize {
        self.jobs.iter().map(|j| j.ptime).sum()
    }

    pub fn has_release_dates(&self) -> bool {
        self.jobs.iter().any(|j| j.rdate > 0)
    }

    /// Sorted distinct release dates `R`.
    pub fn release_dates(&self) -> Vec<Time> {
        self.jobs.iter().map(|j| j.rdate).collect::<BTreeSet<_>>().into_iter().collect()
    }

    /// `κ = |R|`.
    pub fn kappa(&self) -> usize {
        self.release_dates().len()
    }

    /// `(r_1, …, r_n)`, which is all zeros without release dates.
    pub fn initial_due_dates(&self) -> DueDates {
        DueDates(self.jobs.iter().map(|j| j.rdate).collect())
    }

    pub fn validate(&self) -> ValidationReport {
        validate_instance(self)
    }
}

/// `max_j r_j + Σ_j p_j`, which is `Σ_j p_j` when there are no release dates.
pub fn canonical_horizon(jobs: &[Job]) -> Time {
    let max_r = jobs.iter().map(|j| j.rdate).max().unwrap_or(0);
    max_r + jobs.iter().map(|j| j.ptime).sum::<usize>()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    ZeroPtime { job: usize },
    BadIds,
    CostCount { jobs: usize, costs: usize },
    WrongHorizon { expected: Time, found: Time },
    TableLength { job: usize, expected: usize, found: usize },
    InfiniteAtZero { job: usize },
    NonMonotone { job: usize, t: Time },
    NonzeroAtInitial { job: usize, t: Time },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroPtime { job } => write!(f, "job {}: ptime ≥ 1 violated", job),
            Violation::BadIds => f.write_str("job ids must be unique and contiguous from 1"),
            Violation::CostCount { jobs, costs } => {
                write!(f, "{} jobs but {} cost functions", jobs, costs)
            }
            Violation::WrongHorizon { expected, found } => {
                write!(f, "wrong horizon: expected {}, found {}", expected, found)
            }
            Violation::TableLength { job, expected, found } => {
                write!(f, "job {}: cost table has {} entries, expected {}", job, found, expected)
            }
            Violation::InfiniteAtZero { job } => write!(f, "job {}: cost at t=0 is infinite", job),
            Violation::NonMonotone { job, t } => {
                write!(f, "job {}: non-monotone input cost between t={} and t={}", job, t, t + 1)
            }
            Violation::NonzeroAtInitial { job, t } => {
                write!(f, "job {}: cost at its initial due date t={} is not 0", job, t)
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}", v)?;
        }
        Ok(())
    }
}

pub fn validate_instance(inst: &Instance) -> ValidationReport {
    let mut violations = Vec::new();
    let ids_ok = inst.jobs.iter().enumerate().all(|(i, j)| j.id == i + 1);
    if !ids_ok {
        violations.push(Violation::BadIds);
    }
    for job in &inst.jobs {
        if job.ptime == 0 {
            violations.push(Violation::ZeroPtime { job: job.id });
        }
    }
    let expected = canonical_horizon(&inst.jobs);
    if inst.horizon != expected {
        violations.push(Violation::WrongHorizon { expected, found: inst.horizon });
    }
    if inst.costs.len() != inst.jobs.len() {
        violations.push(Violation::CostCount { jobs: inst.jobs.len(), costs: inst.costs.len() });
    }
    for (job, f) in inst.jobs.iter().zip(&inst.costs) {
        if f.len() != inst.horizon + 1 {
            violations.push(Violation::TableLength {
                job: job.id,
                expected: inst.horizon + 1,
                found: f.len(),
            });
            continue;
        }
        if f[0].is_infinite() {
            violations.push(Violation::InfiniteAtZero { job: job.id });
        }
        if let Some(t) = f.first_decrease() {
            violations.push(Violation::NonMonotone { job: job.id, t });
        }
        if job.rdate <= inst.horizon && !f[job.rdate].is_zero() {
            violations.push(Violation::NonzeroAtInitial { job: job.id, t: job.rdate });
        }
    }
    ValidationReport { violations }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CostError {
    #[error("due date {due} of job {job} lies outside the horizon 0..={horizon}")]
    OutOfHorizon { job: usize, due: Time, horizon: Time },
    #[error("{sigma} due dates for {costs} cost functions")]
    LengthMismatch { sigma: usize, costs: usize },
}

/// `Σ_j g_j(σ_j)` with infinity-absorbing addition.
pub fn total_cost(
    inst: &Instance,
    sigma: &DueDates,
    costs: &[CostFunction],
) -> Result<ExtValue, CostError> {
    if sigma.len() != costs.len() {
        return Err(CostError::LengthMismatch { sigma: sigma.len(), costs: costs.len() });
    }
    let mut acc = ExtValue::zero();
    for (j, (due, g)) in sigma.iter().zip(costs).enumerate() {
        let v = g.get(due).filter(|_| due <= inst.horizon).ok_or(CostError::OutOfHorizon {
            job: j + 1,
            due,
            horizon: inst.horizon,
        })?;
        acc = &acc + v;
    }
    Ok(acc)
}
