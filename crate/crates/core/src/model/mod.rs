//! Instance and data model shared by every algorithm.

mod instance;
mod schedule;
mod value;

pub use instance::{
    canonical_horizon, total_cost, validate_instance, CostError, CostFunction, DueDates, Instance,
    Job, Time, ValidationReport, Violation,
};
pub use schedule::Schedule;
pub use value::{decimal6, fraction_with_decimal, parse_rational, ExtValue, ValueParseError};
