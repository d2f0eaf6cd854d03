//! Plain-text iteration tables.
//!
//! One line per iteration, `k t* [r*] A-size D alpha j s undo={kept|reverted}`,
//! followed by `#` footer lines. Jobs are printed with their 1-based ids.

use std::fmt::Write;

use crate::local_ratio::SolveResult;
use crate::primal_dual::PdResult;

fn set_label(set: &[usize]) -> String {
    let ids: Vec<String> = set.iter().map(|j| (j + 1).to_string()).collect();
    format!("{{{}}}", ids.join(","))
}

pub fn render_lr(result: &SolveResult) -> String {
    let with_r = result.trace.iter().any(|s| s.r_star.is_some());
    let mut out = String::new();
    if with_r {
        out.push_str("# k t* r* A-size D alpha j s undo\n");
    } else {
        out.push_str("# k t* A-size D alpha j s undo\n");
    }
    for step in &result.trace {
        let _ = write!(out, "{} {}", step.level, step.t_star);
        if let Some(r) = step.r_star {
            let _ = write!(out, " {}", r);
        }
        let _ = writeln!(
            out,
            " {} {} {} {} {} undo={}",
            step.covered,
            step.demand,
            step.alpha,
            step.job + 1,
            step.time,
            step.undo.as_str()
        );
    }
    let _ = writeln!(out, "# lower_bound={} levels={}", result.lower_bound, result.levels());
    let _ = writeln!(out, "# due_dates={}", result.final_sigma);
    out
}

pub fn render_pd(result: &PdResult) -> String {
    let mut out = String::from("# k t* A-size D alpha j s undo A\n");
    for step in &result.trace {
        let _ = writeln!(
            out,
            "{} {} {} {} {} {} {} undo={} A={}",
            step.k,
            step.t,
            step.set.len(),
            step.demand,
            step.dual,
            step.job + 1,
            step.slot,
            step.prune.as_str(),
            set_label(&step.set)
        );
    }
    let nonzero: Vec<String> = result
        .nonzero_duals()
        .map(|y| format!("y[{},{}]={}", y.t, set_label(&y.set), y.value))
        .collect();
    let _ = writeln!(
        out,
        "# dual_objective={} nonzero_duals={}",
        result.dual_objective,
        if nonzero.is_empty() { "none".to_string() } else { nonzero.join(" ") }
    );
    let _ = writeln!(out, "# due_dates={}", result.due_dates);
    out
}
