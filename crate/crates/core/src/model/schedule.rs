use std::fmt;

use super::instance::{CostFunction, DueDates, Instance, Time};
use super::value::ExtValue;

/// A unit-slot schedule. `slot_job[s - 1]` is the job (0-based index) run in slot `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    pub slot_job: Vec<Option<usize>>,
    /// Completion time per job, 0 for a job that never ran.
    pub completion: Vec<Time>,
    pub preemptive: bool,
}

impl Schedule {
    /// Derives completion times from a slot assignment.
    pub fn from_slots(n: usize, slot_job: Vec<Option<usize>>, preemptive: bool) -> Self {
        let mut completion = vec![0; n];
        for (i, job) in slot_job.iter().enumerate() {
            if let Some(j) = job {
                completion[*j] = i + 1;
            }
        }
        Schedule { slot_job, completion, preemptive }
    }

    /// Run jobs back to back in `order` from time 0, no idle time.
    pub fn sequence(inst: &Instance, order: &[usize]) -> Self {
        let mut slots = Vec::with_capacity(inst.horizon);
        for &j in order {
            slots.extend(std::iter::repeat_n(Some(j), inst.ptime(j)));
        }
        slots.resize(inst.horizon.max(slots.len()), None);
        Schedule::from_slots(inst.n(), slots, false)
    }

    /// Every job finishes by its due date.
    pub fn meets(&self, sigma: &DueDates) -> bool {
        self.completion.iter().zip(sigma.iter()).all(|(&c, d)| c <= d)
    }

    /// Jobs (0-based) that finish after their due date.
    pub fn late_jobs(&self, sigma: &DueDates) -> Vec<usize> {
        self.completion
            .iter()
            .zip(sigma.iter())
            .enumerate()
            .filter(|(_, (&c, d))| c > *d)
            .map(|(j, _)| j)
            .collect()
    }

    /// `Σ_j f_j(C_j)`; a completion beyond the table is infinite.
    pub fn cost(&self, costs: &[CostFunction]) -> ExtValue {
        self.completion
            .iter()
            .zip(costs)
            .map(|(&c, f)| f.get(c).cloned().unwrap_or(ExtValue::Infinity))
            .sum()
    }

    /// Checks the structural schedule invariants against `inst`.
    pub fn check(&self, inst: &Instance) -> Result<(), String> {
        let mut count = vec![0usize; inst.n()];
        for (i, job) in self.slot_job.iter().enumerate() {
            let Some(j) = *job else { continue };
            if j >= inst.n() {
                return Err(format!("slot {} holds unknown job index {}", i + 1, j));
            }
            if i < inst.rdate(j) {
                return Err(format!("job {} runs in slot {} before its release", j + 1, i + 1));
            }
            count[j] += 1;
        }
        for (j, &c) in count.iter().enumerate() {
            if c != inst.ptime(j) {
                return Err(format!("job {} occupies {} slots, needs {}", j + 1, c, inst.ptime(j)));
            }
        }
        if !self.preemptive {
            for j in 0..inst.n() {
                let first = self.slot_job.iter().position(|&s| s == Some(j));
                if let Some(first) = first {
                    let run = self.slot_job[first..].iter().take_while(|&&s| s == Some(j)).count();
                    if run != inst.ptime(j) {
                        return Err(format!("job {} is split in a non-preemptive schedule", j + 1));
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, job) in self.slot_job.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match job {
                Some(j) => write!(f, "{}", j + 1)?,
                None => f.write_str("-")?,
            }
        }
        Ok(())
    }
}
