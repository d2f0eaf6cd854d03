//! Residual demand calculus and EDD feasibility.
//!
//! Without release dates the residual demand at slot `t` is
//! `D(t, σ) = max{T - t + 1 - p(A_t), 0}` with `A_t = {j : σ_j ≥ t}`.
//! With release dates it is measured on intervals `[r, t)`:
//! `D(r, t, σ) = max{r + p({j : r ≤ r_j ≤ σ_j < t}) - t + 1, 0}` for `r ∈ R`.
//! An assignment is feasible exactly when every residual demand vanishes, and
//! earliest-due-date order then meets every due date.

use thiserror::Error;

use crate::model::{DueDates, Instance, Schedule, Time};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DemandError {
    #[error("time {t} outside 1..={horizon}")]
    TimeOutOfRange { t: Time, horizon: Time },
    #[error("{r} is not a release date of the instance")]
    NotAReleaseDate { r: Time },
    #[error("empty interval [{r}, {t})")]
    EmptyInterval { r: Time, t: Time },
    #[error("job {job} has due date {due} outside 0..={horizon}")]
    DueDateOutOfRange { job: usize, due: Time, horizon: Time },
    #[error("unknown job index {0}")]
    UnknownJob(usize),
    #[error("{got} due dates for {n} jobs")]
    Length { got: usize, n: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScheduleError {
    #[error("due dates leave residual demand {demand} at t={t}")]
    Infeasible { t: Time, demand: usize },
    #[error("due dates leave residual demand {demand} on [{r}, {t})")]
    InfeasibleInterval { r: Time, t: Time, demand: usize },
    #[error("job {job} has due date before its release date")]
    DueBeforeRelease { job: usize },
    #[error("non-preemptive EDD needs an instance without release dates")]
    HasReleaseDates,
    #[error(transparent)]
    Demand(#[from] DemandError),
}

/// A maximizer of the residual demand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DemandPoint {
    pub t: Time,
    /// `None` for the variant without release dates.
    pub r: Option<Time>,
    pub value: usize,
}

fn check_sigma(inst: &Instance, sigma: &DueDates) -> Result<(), DemandError> {
    if sigma.len() != inst.n() {
        return Err(DemandError::Length { got: sigma.len(), n: inst.n() });
    }
    match sigma.iter().enumerate().find(|&(_, d)| d > inst.horizon) {
        Some((j, due)) => {
            Err(DemandError::DueDateOutOfRange { job: j + 1, due, horizon: inst.horizon })
        }
        None => Ok(()),
    }
}

fn check_t(inst: &Instance, t: Time) -> Result<(), DemandError> {
    if t == 0 || t > inst.horizon {
        Err(DemandError::TimeOutOfRange { t, horizon: inst.horizon })
    } else {
        Ok(())
    }
}

fn clamp(v: i64) -> usize {
    v.max(0) as usize
}

/// `D(t, A) = max{0, T - t + 1 - p(A)}` for an explicit job set (0-based indices).
pub fn demand_set(inst: &Instance, t: Time, set: &[usize]) -> Result<usize, DemandError> {
    check_t(inst, t)?;
    let mut p = 0i64;
    for &j in set {
        if j >= inst.n() {
            return Err(DemandError::UnknownJob(j));
        }
        p += inst.ptime(j) as i64;
    }
    Ok(clamp(inst.horizon as i64 - t as i64 + 1 - p))
}

/// `D(t, σ) = D(t, A_t^σ)`.
pub fn demand(inst: &Instance, t: Time, sigma: &DueDates) -> Result<usize, DemandError> {
    check_t(inst, t)?;
    check_sigma(inst, sigma)?;
    let covered: Vec<usize> = (0..inst.n()).filter(|&j| sigma[j] >= t).collect();
    demand_set(inst, t, &covered)
}

/// `p_j(t, σ) = min{p_j, D(t, σ)}`.
pub fn truncated_ptime(
    inst: &Instance,
    j: usize,
    t: Time,
    sigma: &DueDates,
) -> Result<usize, DemandError> {
    if j >= inst.n() {
        return Err(DemandError::UnknownJob(j));
    }
    Ok(inst.ptime(j).min(demand(inst, t, sigma)?))
}

/// `p_j(t, A) = min{p_j, D(t, A)}`.
pub fn truncated_ptime_set(
    inst: &Instance,
    j: usize,
    t: Time,
    set: &[usize],
) -> Result<usize, DemandError> {
    if j >= inst.n() {
        return Err(DemandError::UnknownJob(j));
    }
    Ok(inst.ptime(j).min(demand_set(inst, t, set)?))
}

/// `D(r, t, σ)`; `r` must be a release date of the instance and `r < t ≤ T`.
pub fn demand_rd(inst: &Instance, r: Time, t: Time, sigma: &DueDates) -> Result<usize, DemandError> {
    check_t(inst, t)?;
    check_sigma(inst, sigma)?;
    if !inst.jobs.iter().any(|job| job.rdate == r) {
        return Err(DemandError::NotAReleaseDate { r });
    }
    if t <= r {
        return Err(DemandError::EmptyInterval { r, t });
    }
    Ok(demand_rd_unchecked(inst, r, t, sigma))
}

pub(crate) fn demand_rd_unchecked(inst: &Instance, r: Time, t: Time, sigma: &DueDates) -> usize {
    let p: usize = inst
        .jobs
        .iter()
        .enumerate()
        .filter(|&(j, job)| r <= job.rdate && job.rdate <= sigma[j] && sigma[j] < t)
        .map(|(_, job)| job.ptime)
        .sum();
    clamp(r as i64 + p as i64 - t as i64 + 1)
}

/// `p_j(r, t, σ) = min{p_j, D(r, t, σ)}`.
pub fn truncated_ptime_rd(
    inst: &Instance,
    j: usize,
    r: Time,
    t: Time,
    sigma: &DueDates,
) -> Result<usize, DemandError> {
    if j >= inst.n() {
        return Err(DemandError::UnknownJob(j));
    }
    Ok(inst.ptime(j).min(demand_rd(inst, r, t, sigma)?))
}

/// `p(A_t^σ)` for `t = 0..=T+1` by a suffix sum.
fn coverage(inst: &Instance, sigma: &DueDates) -> Vec<usize> {
    let horizon = inst.horizon;
    let mut cover = vec![0usize; horizon + 2];
    for (j, due) in sigma.iter().enumerate() {
        cover[due.min(horizon)] += inst.ptime(j);
    }
    for t in (0..=horizon).rev() {
        cover[t] += cover[t + 1];
    }
    cover
}

/// `D(t, σ)` for every `t`; index 0 is unused.
pub(crate) fn demand_profile(inst: &Instance, sigma: &DueDates) -> Vec<usize> {
    let cover = coverage(inst, sigma);
    let horizon = inst.horizon as i64;
    (0..=inst.horizon)
        .map(|t| if t == 0 { 0 } else { clamp(horizon - t as i64 + 1 - cover[t] as i64) })
        .collect()
}

/// `D(r, t, σ)` for every `t` at a fixed `r`; entries with `t ≤ r` are 0.
pub(crate) fn demand_profile_rd(inst: &Instance, r: Time, sigma: &DueDates) -> Vec<usize> {
    let horizon = inst.horizon;
    // mass[d] = processing time of counted jobs with σ_j = d
    let mut mass = vec![0usize; horizon + 1];
    for (j, job) in inst.jobs.iter().enumerate() {
        let due = sigma[j];
        if r <= job.rdate && job.rdate <= due && due <= horizon {
            mass[due] += job.ptime;
        }
    }
    let mut out = vec![0usize; horizon + 1];
    let mut below = 0usize; // p of counted jobs with σ_j < t
    for t in 1..=horizon {
        below += mass[t - 1];
        if t > r {
            out[t] = clamp(r as i64 + below as i64 - t as i64 + 1);
        }
    }
    out
}

/// Maximizer of `D(t, σ)` over `t ∈ 1..=T`, ties broken by the largest `t`.
/// `None` only for an empty horizon.
pub fn max_demand_point_plain(inst: &Instance, sigma: &DueDates) -> Option<DemandPoint> {
    let profile = demand_profile(inst, sigma);
    let mut best: Option<DemandPoint> = None;
    for t in (1..=inst.horizon).rev() {
        if best.is_none_or(|b| profile[t] > b.value) {
            best = Some(DemandPoint { t, r: None, value: profile[t] });
        }
    }
    best
}

/// Maximizer of `D(r, t, σ)` over `r ∈ R`, `r < t ≤ T`; ties broken by the
/// largest `t`, then the smallest `r`.
pub fn max_demand_point_rd(inst: &Instance, sigma: &DueDates) -> Option<DemandPoint> {
    let releases = inst.release_dates();
    let profiles: Vec<Vec<usize>> =
        releases.iter().map(|&r| demand_profile_rd(inst, r, sigma)).collect();
    let mut best: Option<DemandPoint> = None;
    for t in (1..=inst.horizon).rev() {
        for (&r, profile) in releases.iter().zip(&profiles) {
            if r >= t {
                continue;
            }
            if best.is_none_or(|b| profile[t] > b.value) {
                best = Some(DemandPoint { t, r: Some(r), value: profile[t] });
            }
        }
    }
    best
}

/// Dispatches on whether the instance has release dates.
pub fn max_demand_point(inst: &Instance, sigma: &DueDates) -> Option<DemandPoint> {
    if inst.has_release_dates() {
        max_demand_point_rd(inst, sigma)
    } else {
        max_demand_point_plain(inst, sigma)
    }
}

/// First slot with positive residual demand, if any.
pub(crate) fn first_violation_plain(inst: &Instance, sigma: &DueDates) -> Option<(Time, usize)> {
    if sigma.iter().any(|d| d > inst.horizon) {
        return Some((inst.horizon, 0));
    }
    let profile = demand_profile(inst, sigma);
    (1..=inst.horizon).find(|&t| profile[t] > 0).map(|t| (t, profile[t]))
}

/// First interval `[r, t)` with positive residual demand, if any.
pub(crate) fn first_violation_rd(inst: &Instance, sigma: &DueDates) -> Option<(Time, Time, usize)> {
    for r in inst.release_dates() {
        let profile = demand_profile_rd(inst, r, sigma);
        if let Some(t) = (r + 1..=inst.horizon).find(|&t| profile[t] > 0) {
            return Some((r, t, profile[t]));
        }
    }
    None
}

/// `D(t, σ) = 0` for every `t ∈ 1..=T`.
pub fn is_feasible_plain(inst: &Instance, sigma: &DueDates) -> bool {
    sigma.len() == inst.n() && first_violation_plain(inst, sigma).is_none()
}

/// `σ_j ≥ r_j` for every job and `D(r, t, σ) = 0` for every `r ∈ R`, `r < t ≤ T`.
pub fn is_feasible_rd(inst: &Instance, sigma: &DueDates) -> bool {
    sigma.len() == inst.n()
        && sigma.iter().enumerate().all(|(j, d)| inst.rdate(j) <= d && d <= inst.horizon)
        && first_violation_rd(inst, sigma).is_none()
}

/// Dispatches on whether the instance has release dates.
pub fn is_feasible(inst: &Instance, sigma: &DueDates) -> bool {
    if inst.has_release_dates() {
        is_feasible_rd(inst, sigma)
    } else {
        is_feasible_plain(inst, sigma)
    }
}

/// EDD order: non-decreasing due date, ties by smaller job index.
pub fn edd_order(sigma: &DueDates) -> Vec<usize> {
    let mut order: Vec<usize> = (0..sigma.len()).collect();
    order.sort_by_key(|&j| (sigma[j], j));
    order
}

/// Non-preemptive EDD without any feasibility precheck.
pub fn simulate_edd(inst: &Instance, sigma: &DueDates) -> Schedule {
    Schedule::sequence(inst, &edd_order(sigma))
}

/// Unit-slot preemptive EDD without any feasibility precheck: each slot runs
/// the released, unfinished job with the smallest due date (ties by index).
pub fn simulate_edd_preemptive(inst: &Instance, sigma: &DueDates) -> Schedule {
    let mut remaining: Vec<usize> = inst.jobs.iter().map(|j| j.ptime).collect();
    let mut slots = Vec::with_capacity(inst.horizon);
    for s in 1..=inst.horizon {
        let pick = (0..inst.n())
            .filter(|&j| remaining[j] > 0 && inst.rdate(j) < s)
            .min_by_key(|&j| (sigma[j], j));
        if let Some(j) = pick {
            remaining[j] -= 1;
        }
        slots.push(pick);
    }
    Schedule::from_slots(inst.n(), slots, true)
}

/// EDD schedule for a feasible assignment on an instance without release dates.
pub fn edd_schedule(inst: &Instance, sigma: &DueDates) -> Result<Schedule, ScheduleError> {
    if inst.has_release_dates() {
        return Err(ScheduleError::HasReleaseDates);
    }
    check_sigma(inst, sigma)?;
    if let Some((t, demand)) = first_violation_plain(inst, sigma) {
        return Err(ScheduleError::Infeasible { t, demand });
    }
    let schedule = simulate_edd(inst, sigma);
    debug_assert!(schedule.meets(sigma));
    Ok(schedule)
}

/// Preemptive EDD schedule for an assignment that is feasible with respect to
/// release dates.
pub fn edd_schedule_preemptive(inst: &Instance, sigma: &DueDates) -> Result<Schedule, ScheduleError> {
    check_sigma(inst, sigma)?;
    if let Some(j) = (0..inst.n()).find(|&j| sigma[j] < inst.rdate(j)) {
        return Err(ScheduleError::DueBeforeRelease { job: j + 1 });
    }
    if let Some((r, t, demand)) = first_violation_rd(inst, sigma) {
        return Err(ScheduleError::InfeasibleInterval { r, t, demand });
    }
    let schedule = simulate_edd_preemptive(inst, sigma);
    debug_assert!(schedule.meets(sigma));
    Ok(schedule)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factory::{counterexample, random_instance, CostModel};
    use crate::model::{CostFunction, Job};
    use proptest::prelude::*;

    fn sigma(v: &[usize]) -> DueDates {
        DueDates::new(v.to_vec())
    }

    fn plain(ptimes: &[usize]) -> Instance {
        let jobs: Vec<Job> =
            ptimes.iter().enumerate().map(|(i, &p)| Job::new(i + 1, p, 0)).collect();
        let horizon: usize = ptimes.iter().sum();
        Instance::new(jobs, vec![CostFunction::zero(horizon); ptimes.len()])
    }

    fn released(spec: &[(usize, usize)]) -> Instance {
        let jobs: Vec<Job> =
            spec.iter().enumerate().map(|(i, &(p, r))| Job::new(i + 1, p, r)).collect();
        let horizon = crate::model::canonical_horizon(&jobs);
        Instance::new(jobs, vec![CostFunction::zero(horizon); spec.len()])
    }

    #[test]
    fn demand_on_counterexample() {
        let cx = counterexample(4).unwrap();
        assert_eq!(demand(&cx, 1, &sigma(&[0, 0, 0, 0])).unwrap(), 16);
        // state after three growing iterations: jobs 3, 4 at 3p-2 and job 1 at p-1
        assert_eq!(demand(&cx, 11, &sigma(&[3, 0, 10, 10])).unwrap(), 6);
        assert_eq!(demand(&cx, 5, &sigma(&[16, 16, 0, 0])).unwrap(), 4);
        assert_eq!(demand(&cx, 5, &sigma(&[16, 16, 16, 0])).unwrap(), 0);
        assert!(matches!(
            demand(&cx, 0, &sigma(&[0, 0, 0, 0])),
            Err(DemandError::TimeOutOfRange { .. })
        ));
        assert!(demand(&cx, 17, &sigma(&[0, 0, 0, 0])).is_err());
    }

    #[test]
    fn demand_set_examples() {
        let cx = counterexample(4).unwrap();
        assert_eq!(demand_set(&cx, 1, &[2]).unwrap(), 12);
        assert_eq!(demand_set(&cx, 11, &[]).unwrap(), 6);
        assert_eq!(demand_set(&cx, 16, &[]).unwrap(), 1);
    }

    #[test]
    fn truncated_examples() {
        let cx = counterexample(4).unwrap();
        assert_eq!(truncated_ptime_set(&cx, 0, 11, &[]).unwrap(), 4);
        // D(15, ∅) = 2 < p = 4
        assert_eq!(truncated_ptime_set(&cx, 0, 15, &[]).unwrap(), 2);
        assert_eq!(truncated_ptime(&cx, 0, 15, &sigma(&[0, 0, 0, 0])).unwrap(), 2);
        assert_eq!(truncated_ptime(&cx, 0, 1, &sigma(&[16, 16, 16, 16])).unwrap(), 0);
    }

    #[test]
    fn demand_rd_examples() {
        let inst = released(&[(2, 0), (3, 2)]);
        let s = sigma(&[0, 2]);
        assert_eq!(demand_rd(&inst, 0, 3, &s).unwrap(), 3);
        assert_eq!(demand_rd(&inst, 2, 3, &s).unwrap(), 3);
        assert_eq!(demand_rd(&inst, 0, 3, &sigma(&[5, 5])).unwrap(), 0);
        assert_eq!(truncated_ptime_rd(&inst, 0, 2, 3, &s).unwrap(), 2);
        assert_eq!(truncated_ptime_rd(&inst, 1, 2, 3, &s).unwrap(), 3);
        assert_eq!(truncated_ptime_rd(&inst, 0, 0, 3, &s).unwrap(), 2);
        assert_eq!(demand_rd(&inst, 1, 3, &s), Err(DemandError::NotAReleaseDate { r: 1 }));
        assert_eq!(demand_rd(&inst, 2, 2, &s), Err(DemandError::EmptyInterval { r: 2, t: 2 }));
    }

    #[test]
    fn max_point_examples() {
        let cx = counterexample(4).unwrap();
        assert_eq!(
            max_demand_point(&cx, &sigma(&[0, 0, 0, 0])),
            Some(DemandPoint { t: 1, r: None, value: 16 })
        );
        assert_eq!(
            max_demand_point(&cx, &sigma(&[3, 0, 10, 10])),
            Some(DemandPoint { t: 11, r: None, value: 6 })
        );
        let feasible = max_demand_point(&cx, &sigma(&[11, 11, 16, 16])).unwrap();
        assert_eq!(feasible.value, 0);
        assert_eq!(feasible.t, 16);
    }

    #[test]
    fn max_point_rd_breaks_ties_by_largest_t_then_smallest_r() {
        // r=0 and r=1 both reach the maximum D=2 at t=2
        let inst = released(&[(1, 0), (1, 1), (1, 1)]);
        let s = sigma(&[0, 1, 1]);
        let pt = max_demand_point_rd(&inst, &s).unwrap();
        assert_eq!(pt, DemandPoint { t: 2, r: Some(0), value: 2 });
        let s2 = sigma(&[1, 1, 1]);
        let pt2 = max_demand_point_rd(&inst, &s2).unwrap();
        assert_eq!(pt2.value, demand_rd(&inst, pt2.r.unwrap(), pt2.t, &s2).unwrap());
    }

    #[test]
    fn feasibility_examples() {
        let cx = counterexample(4).unwrap();
        assert!(is_feasible(&cx, &sigma(&[11, 11, 16, 16])));
        // frozen from brute force over every t: job 4 at 14 still covers [12, 14]
        assert!(is_feasible(&cx, &sigma(&[11, 11, 16, 14])));
        assert!(!is_feasible(&cx, &sigma(&[11, 11, 16, 10])));
        assert_eq!(demand(&cx, 12, &sigma(&[11, 11, 16, 10])).unwrap(), 1);
        assert!(is_feasible(&cx, &sigma(&[16, 16, 16, 16])));
    }

    #[test]
    fn edd_examples() {
        let cx = counterexample(4).unwrap();
        let s = edd_schedule(&cx, &sigma(&[11, 11, 16, 16])).unwrap();
        assert_eq!(s.completion, vec![4, 8, 12, 16]);
        assert_eq!(edd_order(&sigma(&[11, 11, 16, 16])), vec![0, 1, 2, 3]);

        let one = plain(&[3]);
        assert_eq!(edd_schedule(&one, &sigma(&[3])).unwrap().completion, vec![3]);

        let two = plain(&[2, 2]);
        let s = edd_schedule(&two, &sigma(&[4, 2])).unwrap();
        assert_eq!(edd_order(&sigma(&[4, 2])), vec![1, 0]);
        assert_eq!(s.completion, vec![4, 2]);
        assert!(s.check(&two).is_ok());

        assert_eq!(
            edd_schedule(&cx, &sigma(&[11, 11, 16, 10])),
            Err(ScheduleError::Infeasible { t: 12, demand: 1 })
        );
    }

    #[test]
    fn preemptive_edd_examples() {
        let inst = released(&[(2, 0), (1, 1)]);
        let s = edd_schedule_preemptive(&inst, &sigma(&[3, 2])).unwrap();
        assert_eq!(&s.slot_job[..3], &[Some(0), Some(1), Some(0)]);
        assert_eq!(s.completion, vec![3, 2]);
        assert!(s.check(&inst).is_ok());

        let single = released(&[(2, 5)]);
        let s = edd_schedule_preemptive(&single, &sigma(&[7])).unwrap();
        assert_eq!(s.completion, vec![7]);

        assert!(matches!(
            edd_schedule_preemptive(&single, &sigma(&[6])),
            Err(ScheduleError::InfeasibleInterval { r: 5, t: 7, demand: 1 })
        ));
    }

    #[test]
    fn single_release_date_matches_shifted_plain_edd() {
        for seed in 0..40u64 {
            let base = random_instance(seed, 4, 3, 1, CostModel::Step).unwrap();
            let shift = 1 + (seed as usize % 4);
            let jobs: Vec<Job> =
                base.jobs.iter().map(|j| Job::new(j.id, j.ptime, shift)).collect();
            let shifted = Instance::new(jobs, vec![CostFunction::zero(base.horizon + shift); 4]);
            let due = sigma(&[base.horizon, 2, base.horizon, 3]);
            let plain_c = simulate_edd(&base, &due).completion;
            let due_shifted = DueDates::new(due.iter().map(|d| d + shift).collect());
            let pre_c = simulate_edd_preemptive(&shifted, &due_shifted).completion;
            let expected: Vec<usize> = plain_c.iter().map(|c| c + shift).collect();
            assert_eq!(pre_c, expected, "seed {}", seed);
        }
    }

    fn all_sigmas(inst: &Instance, f: &mut impl FnMut(&DueDates)) {
        let n = inst.n();
        let lo: Vec<usize> = (0..n).map(|j| inst.rdate(j)).collect();
        let mut cur = lo.clone();
        loop {
            f(&DueDates::new(cur.clone()));
            let mut i = 0;
            loop {
                if i == n {
                    return;
                }
                if cur[i] < inst.horizon {
                    cur[i] += 1;
                    break;
                }
                cur[i] = lo[i];
                i += 1;
            }
        }
    }

    #[test]
    fn edd_biconditional_small() {
        for ptimes in [&[1usize, 2][..], &[2, 2, 1], &[3, 1, 2, 1]] {
            let inst = plain(ptimes);
            all_sigmas(&inst, &mut |s| {
                let by_demand = (1..=inst.horizon).all(|t| demand(&inst, t, s).unwrap() == 0);
                assert_eq!(by_demand, simulate_edd(&inst, s).meets(s), "{}", s);
                assert_eq!(by_demand, is_feasible_plain(&inst, s));
            });
        }
    }

    #[test]
    fn preemptive_edd_biconditional_small() {
        for spec in [&[(1usize, 0usize), (2, 1)][..], &[(2, 0), (1, 2), (1, 2)], &[(1, 1), (2, 3), (1, 0)]] {
            let inst = released(spec);
            all_sigmas(&inst, &mut |s| {
                let by_demand = is_feasible_rd(&inst, s);
                assert_eq!(by_demand, simulate_edd_preemptive(&inst, s).meets(s), "{}", s);
            });
        }
    }

    proptest! {
        #[test]
        fn demand_matches_explicit_set(seed in 0u64..300, n in 1usize..6, raw in proptest::collection::vec(0usize..64, 6)) {
            let inst = random_instance(seed, n, 4, 1, CostModel::Step).unwrap();
            let s = DueDates::new(raw.iter().take(n).map(|x| x % (inst.horizon + 1)).collect());
            let profile = demand_profile(&inst, &s);
            for (t, &d) in profile.iter().enumerate().skip(1) {
                let set: Vec<usize> = (0..n).filter(|&j| s[j] >= t).collect();
                prop_assert_eq!(demand(&inst, t, &s).unwrap(), demand_set(&inst, t, &set).unwrap());
                prop_assert_eq!(d, demand_set(&inst, t, &set).unwrap());
            }
            prop_assert_eq!(demand(&inst, 1, &DueDates::zeros(n)).unwrap(), inst.horizon);
        }

        #[test]
        fn demand_is_antitone_in_sigma(
            seed in 0u64..300,
            n in 1usize..6,
            kappa in 1usize..4,
            raw in proptest::collection::vec((0usize..64, 0usize..64), 6),
        ) {
            let kappa = kappa.min(n);
            let inst = random_instance(seed, n, 3, kappa, CostModel::WeightedCompletion).unwrap();
            let span = |j: usize| inst.horizon - inst.rdate(j) + 1;
            let lo: Vec<usize> = (0..n).map(|j| inst.rdate(j) + raw[j].0.min(raw[j].1) % span(j)).collect();
            let hi: Vec<usize> = (0..n).map(|j| (lo[j] + raw[j].0.abs_diff(raw[j].1)).min(inst.horizon)).collect();
            let (lo, hi) = (DueDates::new(lo), DueDates::new(hi));
            for t in 1..=inst.horizon {
                prop_assert!(demand(&inst, t, &lo).unwrap() >= demand(&inst, t, &hi).unwrap());
                for r in inst.release_dates() {
                    if r < t {
                        prop_assert!(
                            demand_rd(&inst, r, t, &lo).unwrap() >= demand_rd(&inst, r, t, &hi).unwrap()
                        );
                    }
                }
            }
        }

        #[test]
        fn profile_rd_matches_pointwise(seed in 0u64..300, n in 1usize..6, kappa in 1usize..4, raw in proptest::collection::vec(0usize..64, 6)) {
            let kappa = kappa.min(n);
            let inst = random_instance(seed, n, 3, kappa, CostModel::Step).unwrap();
            let s = DueDates::new((0..n).map(|j| inst.rdate(j) + raw[j] % (inst.horizon - inst.rdate(j) + 1)).collect());
            for r in inst.release_dates() {
                let profile = demand_profile_rd(&inst, r, &s);
                for (t, &d) in profile.iter().enumerate().skip(r + 1) {
                    prop_assert_eq!(d, demand_rd(&inst, r, t, &s).unwrap());
                }
            }
            if let Some(pt) = max_demand_point_rd(&inst, &s) {
                let best = inst.release_dates().into_iter()
                    .flat_map(|r| (r + 1..=inst.horizon).map(move |t| (r, t)))
                    .map(|(r, t)| demand_rd(&inst, r, t, &s).unwrap())
                    .max()
                    .unwrap();
                prop_assert_eq!(pt.value, best);
            }
        }
    }
}
