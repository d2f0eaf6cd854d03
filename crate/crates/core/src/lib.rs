//! Approximation algorithms for single machine scheduling with generalized
//! min-sum cost functions `Σ f_j(C_j)`, plus the tooling to check them.
//!
//! - [`local_ratio`]: due-date growing 4-approximation, and its `4κ`
//!   variant for `κ` distinct release dates.
//! - [`primal_dual`]: the knapsack-cover primal-dual procedure with explicit
//!   duals, used to exhibit its primal-dual gap.
//! - [`oracle`]: exact optimum for small instances.

pub mod cli;
pub mod demand;
pub mod factory;
pub mod local_ratio;
pub mod model;
pub mod oracle;
pub mod primal_dual;
pub mod trace;
