//! Instance builders: the primal-dual gap family, the properize transformation,
//! seeded random instances and the JSON file format.

mod io;
mod random;

use num::{BigInt, BigRational, Signed, Zero};
use thiserror::Error;

use crate::model::{CostFunction, ExtValue, Instance, Job};

pub use io::{from_json, read_instance, to_json, write_instance, IoError};
pub use random::{random_instance, CostModel};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FactoryError {
    #[error("p must be ≥ 4 (got {0})")]
    PTooSmall(usize),
    #[error("delta must be positive (got {0})")]
    DeltaNotPositive(BigRational),
    #[error("properize is defined for instances without release dates")]
    HasReleaseDates,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

/// The four-job instance on which the primal-dual procedure ends with primal
/// cost `4p` against dual value `p + 2`.
///
/// All jobs have length `p` and `T = 4p`. Jobs 1 and 2 cost 0 until `p - 1`,
/// `p` until `3p - 1` and infinity afterwards; jobs 3 and 4 cost 0 until
/// `3p - 2` and `p` afterwards.
pub fn counterexample(p: usize) -> Result<Instance, FactoryError> {
    if p < 4 {
        return Err(FactoryError::PTooSmall(p));
    }
    let horizon = 4 * p;
    let cost_p = ExtValue::from_int(p as i64);
    let early = CostFunction::from_fn(horizon, |t| {
        if t < p {
            ExtValue::zero()
        } else if t < 3 * p {
            cost_p.clone()
        } else {
            ExtValue::Infinity
        }
    });
    let late = CostFunction::from_fn(horizon, |t| {
        if t <= 3 * p - 2 {
            ExtValue::zero()
        } else {
            cost_p.clone()
        }
    });
    let jobs = (1..=4).map(|id| Job::new(id, p, 0)).collect();
    Ok(Instance::new(jobs, vec![early.clone(), early, late.clone(), late]))
}

/// Removes the artificial zero-cost prefix of an instance.
///
/// A dummy job of length `T` (cost 0 up to `T`, infinite afterwards) is
/// appended, the horizon doubles, and every original cost is shifted right by
/// `T` with `δ·p_j` added on all real slots:
/// `f'_j(t) = δ p_j` for `1 ≤ t ≤ T` and `δ p_j + f_j(t - T)` for `T < t ≤ 2T`.
/// Slot 0 stays at cost 0.
pub fn properize(inst: &Instance, delta: &BigRational) -> Result<Instance, FactoryError> {
    if !delta.is_positive() {
        return Err(FactoryError::DeltaNotPositive(delta.clone()));
    }
    if inst.has_release_dates() {
        return Err(FactoryError::HasReleaseDates);
    }
    let t_old = inst.horizon;
    let t_new = 2 * t_old;
    let mut jobs = inst.jobs.clone();
    let mut costs = Vec::with_capacity(inst.n() + 1);
    for (job, f) in inst.jobs.iter().zip(&inst.costs) {
        let base = delta * BigRational::from_integer(BigInt::from(job.ptime));
        costs.push(CostFunction::from_fn(t_new, |t| {
            if t == 0 {
                ExtValue::zero()
            } else if t <= t_old {
                ExtValue::Finite(base.clone())
            } else {
                ExtValue::Finite(base.clone()) + f[t - t_old].clone()
            }
        }));
    }
    jobs.push(Job::new(inst.n() + 1, t_old, 0));
    costs.push(CostFunction::from_fn(t_new, |t| {
        if t <= t_old {
            ExtValue::zero()
        } else {
            ExtValue::Infinity
        }
    }));
    Ok(Instance::new(jobs, costs))
}

/// Parses a strictly positive `N/D` (or integer) delta.
pub fn parse_delta(s: &str) -> Result<BigRational, FactoryError> {
    let delta = crate::model::parse_rational(s)
        .map_err(|e| FactoryError::InvalidParams(format!("delta: {}", e)))?;
    if delta.is_zero() || delta.is_negative() {
        return Err(FactoryError::DeltaNotPositive(delta));
    }
    Ok(delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Violation;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn counterexample_tables() {
        let cx = counterexample(4).unwrap();
        assert_eq!(cx.horizon, 16);
        assert_eq!(cx.n(), 4);
        assert!(cx.jobs.iter().all(|j| j.ptime == 4 && j.rdate == 0));
        assert_eq!(cx.costs[0][3], ExtValue::zero());
        assert_eq!(cx.costs[0][4], ExtValue::from_int(4));
        assert_eq!(cx.costs[0][11], ExtValue::from_int(4));
        assert_eq!(cx.costs[0][12], ExtValue::Infinity);
        assert_eq!(cx.costs[2][14], ExtValue::from_int(4));
        assert_eq!(cx.costs[2][10], ExtValue::zero());
        assert_eq!(cx.costs[2][11], ExtValue::from_int(4));
        assert_eq!(cx.costs[2][15], ExtValue::from_int(4));
        assert_eq!(cx.costs[0], cx.costs[1]);
        assert_eq!(cx.costs[2], cx.costs[3]);
        assert!(cx.costs.iter().all(|f| f[0].is_zero()));
    }

    #[test]
    fn counterexample_rejects_small_p() {
        assert_eq!(counterexample(3), Err(FactoryError::PTooSmall(3)));
        assert_eq!(FactoryError::PTooSmall(3).to_string(), "p must be ≥ 4 (got 3)");
    }

    #[test]
    fn properize_counterexample() {
        let cx = counterexample(4).unwrap();
        let pr = properize(&cx, &q(1, 100)).unwrap();
        assert_eq!(pr.n(), 5);
        assert_eq!(pr.horizon, 32);
        assert_eq!(pr.jobs[4].ptime, 16);
        assert_eq!(pr.costs[4][16], ExtValue::zero());
        assert_eq!(pr.costs[4][17], ExtValue::Infinity);
        assert_eq!(pr.costs[0][16], ExtValue::ratio(4, 100));
        assert_eq!(pr.costs[0][20], ExtValue::ratio(4, 100) + ExtValue::from_int(4));
        assert!(pr.validate().is_valid(), "{}", pr.validate());
    }

    #[test]
    fn properize_costs_dominate_first_achievable_slot() {
        let pr = properize(&counterexample(5).unwrap(), &q(1, 7)).unwrap();
        for (job, f) in pr.jobs.iter().zip(&pr.costs) {
            for t in job.ptime..=pr.horizon {
                assert!(f[t] >= f[job.ptime], "job {} t {}", job.id, t);
            }
        }
    }

    #[test]
    fn properize_inverts_by_unshifting() {
        let cx = counterexample(6).unwrap();
        let delta = q(3, 11);
        let pr = properize(&cx, &delta).unwrap();
        assert_eq!(&pr.jobs[..4], &cx.jobs[..]);
        for j in 0..4 {
            let shift = &delta * BigRational::from_integer(BigInt::from(cx.ptime(j)));
            for t in 1..=cx.horizon {
                let back = pr.costs[j][t + cx.horizon].checked_sub(&shift).unwrap();
                assert_eq!(back, cx.costs[j][t]);
            }
        }
    }

    #[test]
    fn properize_rejects_bad_delta() {
        let cx = counterexample(4).unwrap();
        assert!(matches!(properize(&cx, &q(0, 1)), Err(FactoryError::DeltaNotPositive(_))));
        assert!(matches!(properize(&cx, &q(-1, 3)), Err(FactoryError::DeltaNotPositive(_))));
        assert!(parse_delta("1/100").is_ok());
        assert!(parse_delta("0/5").is_err());
        assert!(parse_delta("a/b").is_err());
    }

    #[test]
    fn counterexample_validates_for_many_p() {
        for p in 4..30 {
            let report = counterexample(p).unwrap().validate();
            assert!(report.is_valid());
            assert!(!report.violations.contains(&Violation::BadIds));
        }
    }
}
