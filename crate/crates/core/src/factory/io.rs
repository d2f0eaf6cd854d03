//! JSON instance files.
//!
//! ```json
//! {"horizon": 16,
//!  "jobs": [{"id": 1, "p": 4, "r": 0, "cost": {"type": "table", "values": [0, 0, "3/2", "inf"]}},
//!           {"id": 2, "p": 2, "cost": {"type": "step", "breaks": [[3, 1], [5, "inf"]]}},
//!           {"id": 3, "p": 1, "cost": {"type": "weighted_tardiness", "w": 2, "d": 4}},
//!           {"id": 4, "p": 3, "cost": {"type": "weighted_completion", "w": "1/2"}}]}
//! ```
//!
//! Values are integers, `"num/den"` strings or `"inf"`. `horizon` is
//! recomputed when absent. Parametric forms expand to dense tables at load.

use std::fs;
use std::path::Path;

use num::{BigRational, One, ToPrimitive};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::model::{canonical_horizon, CostFunction, ExtValue, Instance, Job};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("malformed instance JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("job {job}: field `{field}` {msg}")]
    Field { job: usize, field: &'static str, msg: String },
}

#[derive(Serialize, Deserialize)]
struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    horizon: Option<i64>,
    jobs: Vec<JobEntry>,
}

#[derive(Serialize, Deserialize)]
struct JobEntry {
    id: i64,
    p: i64,
    #[serde(default)]
    r: i64,
    cost: CostSpec,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum CostSpec {
    Table { values: Vec<Value> },
    Step { breaks: Vec<(i64, Value)> },
    WeightedTardiness { w: Value, d: i64 },
    WeightedCompletion { w: Value },
}

fn field_err(job: usize, field: &'static str, msg: impl Into<String>) -> IoError {
    IoError::Field { job, field, msg: msg.into() }
}

fn non_negative(job: usize, field: &'static str, v: i64) -> Result<usize, IoError> {
    usize::try_from(v).map_err(|_| field_err(job, field, format!("must be non-negative, got {}", v)))
}

fn parse_value(job: usize, field: &'static str, v: &Value) -> Result<ExtValue, IoError> {
    let parsed = match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string().parse::<ExtValue>().ok(),
        Value::String(s) => s.parse::<ExtValue>().ok(),
        _ => None,
    };
    match parsed {
        Some(ExtValue::Finite(q)) if q < BigRational::from_integer(0.into()) => {
            Err(field_err(job, field, format!("must be non-negative, got {}", q)))
        }
        Some(x) => Ok(x),
        None => Err(field_err(
            job,
            field,
            format!("expected an integer, a \"num/den\" string or \"inf\", got {}", v),
        )),
    }
}

fn encode_value(v: &ExtValue) -> Value {
    match v {
        ExtValue::Infinity => Value::String("inf".into()),
        ExtValue::Finite(q) => {
            if q.denom().is_one() {
                if let Some(i) = q.numer().to_i64() {
                    return Value::from(i);
                }
            }
            Value::String(q.to_string())
        }
    }
}

fn expand(job: &Job, spec: &CostSpec, horizon: usize) -> Result<CostFunction, IoError> {
    let id = job.id;
    match spec {
        CostSpec::Table { values } => Ok(CostFunction::new(
            values.iter().map(|v| parse_value(id, "values", v)).collect::<Result<_, _>>()?,
        )),
        CostSpec::Step { breaks } => {
            let mut points = Vec::with_capacity(breaks.len());
            for (t, v) in breaks {
                points.push((non_negative(id, "breaks", *t)?, parse_value(id, "breaks", v)?));
            }
            points.sort_by_key(|(t, _)| *t);
            Ok(CostFunction::from_fn(horizon, |t| {
                points
                    .iter()
                    .rev()
                    .find(|(b, _)| *b <= t)
                    .map(|(_, v)| v.clone())
                    .unwrap_or_else(ExtValue::zero)
            }))
        }
        CostSpec::WeightedTardiness { w, d } => {
            let w = parse_value(id, "w", w)?;
            let d = non_negative(id, "d", *d)?;
            Ok(CostFunction::from_fn(horizon, |t| linear(&w, t.saturating_sub(d))))
        }
        CostSpec::WeightedCompletion { w } => {
            let w = parse_value(id, "w", w)?;
            Ok(CostFunction::from_fn(horizon, |t| linear(&w, t.saturating_sub(job.rdate))))
        }
    }
}

fn linear(w: &ExtValue, k: usize) -> ExtValue {
    if k == 0 {
        ExtValue::zero()
    } else {
        w.scale(&BigRational::from_integer(k.into()))
    }
}

/// Parses an instance document.
pub fn from_json(text: &str) -> Result<Instance, IoError> {
    let file: InstanceFile = serde_json::from_str(text)?;
    let mut jobs = Vec::with_capacity(file.jobs.len());
    for (i, entry) in file.jobs.iter().enumerate() {
        let id = non_negative(i + 1, "id", entry.id)?;
        let ptime = non_negative(id, "p", entry.p)?;
        let rdate = non_negative(id, "r", entry.r)?;
        jobs.push(Job::new(id, ptime, rdate));
    }
    let horizon = match file.horizon {
        Some(h) => non_negative(0, "horizon", h)?,
        None => canonical_horizon(&jobs),
    };
    let costs = jobs
        .iter()
        .zip(&file.jobs)
        .map(|(job, entry)| expand(job, &entry.cost, horizon))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Instance { jobs, costs, horizon })
}

/// Serializes with dense tables and an explicit horizon.
pub fn to_json(inst: &Instance) -> String {
    let file = InstanceFile {
        horizon: Some(inst.horizon as i64),
        jobs: inst
            .jobs
            .iter()
            .zip(&inst.costs)
            .map(|(job, f)| JobEntry {
                id: job.id as i64,
                p: job.ptime as i64,
                r: job.rdate as i64,
                cost: CostSpec::Table { values: f.values().iter().map(encode_value).collect() },
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("instance serialization cannot fail")
}

pub fn read_instance(path: impl AsRef<Path>) -> Result<Instance, IoError> {
    from_json(&fs::read_to_string(path)?)
}

pub fn write_instance(inst: &Instance, path: impl AsRef<Path>) -> Result<(), IoError> {
    let mut text = to_json(inst);
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}
