use std::fmt;
use std::str::FromStr;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::FactoryError;
use crate::model::{canonical_horizon, CostFunction, ExtValue, Instance, Job};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CostModel {
    /// Random non-decreasing staircase, zero up to the release date.
    Step,
    /// `w_j · max(0, t - r_j)`.
    WeightedCompletion,
    /// `w_j · max(0, t - d_j)` with `d_j ≥ r_j`.
    WeightedTardiness,
}

impl CostModel {
    pub const ALL: [CostModel; 3] =
        [CostModel::Step, CostModel::WeightedCompletion, CostModel::WeightedTardiness];

    pub fn name(self) -> &'static str {
        match self {
            CostModel::Step => "step",
            CostModel::WeightedCompletion => "weighted_completion",
            CostModel::WeightedTardiness => "weighted_tardiness",
        }
    }
}

impl fmt::Display for CostModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CostModel {
    type Err = FactoryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CostModel::ALL
            .into_iter()
            .find(|m| m.name() == s || m.name().replace('_', "-") == s)
            .ok_or_else(|| FactoryError::InvalidParams(format!("unknown cost model `{}`", s)))
    }
}

const MAX_WEIGHT: i64 = 5;

/// Deterministic instance from a seed.
///
/// Release dates: `0` plus `kappa - 1` distinct positive values, each used by
/// at least one job. With `kappa = 1` every job is released at 0.
pub fn random_instance(
    seed: u64,
    n: usize,
    p_max: usize,
    kappa: usize,
    model: CostModel,
) -> Result<Instance, FactoryError> {
    if n == 0 || p_max == 0 || kappa == 0 {
        return Err(FactoryError::InvalidParams("n, p_max and kappa must be ≥ 1".into()));
    }
    if kappa > n {
        return Err(FactoryError::InvalidParams(format!("kappa ({}) must be ≤ n ({})", kappa, n)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ptimes: Vec<usize> = (0..n).map(|_| rng.random_range(1..=p_max)).collect();
    let total: usize = ptimes.iter().sum();

    let span = (total / 2).max(kappa - 1).max(1);
    let mut pool: Vec<usize> = (1..=span).collect();
    pool.shuffle(&mut rng);
    let mut releases = vec![0usize];
    releases.extend(pool.into_iter().take(kappa - 1));

    let mut rdates = vec![0usize; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    for (k, &j) in order.iter().enumerate() {
        rdates[j] = if k < kappa { releases[k] } else { *releases.choose(&mut rng).unwrap() };
    }

    let jobs: Vec<Job> =
        (0..n).map(|j| Job::new(j + 1, ptimes[j], rdates[j])).collect();
    let horizon = canonical_horizon(&jobs);
    let costs = jobs
        .iter()
        .map(|job| match model {
            CostModel::Step => {
                let zero_until = rng.random_range(job.rdate..=horizon);
                let mut level = 0i64;
                CostFunction::from_fn(horizon, |t| {
                    if t > zero_until && rng.random_bool(0.35) {
                        level += rng.random_range(1..=MAX_WEIGHT);
                    }
                    ExtValue::from_int(level)
                })
            }
            CostModel::WeightedCompletion => {
                let w = rng.random_range(1..=MAX_WEIGHT);
                CostFunction::from_fn(horizon, |t| {
                    ExtValue::from_int(w * t.saturating_sub(job.rdate) as i64)
                })
            }
            CostModel::WeightedTardiness => {
                let w = rng.random_range(1..=MAX_WEIGHT);
                let due = rng.random_range(job.rdate..=horizon);
                CostFunction::from_fn(horizon, |t| ExtValue::from_int(w * t.saturating_sub(due) as i64))
            }
        })
        .collect();
    Ok(Instance::new(jobs, costs))
}
