//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on an input or runtime error, 2 on a usage
//! error or a violated invariant.

use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num::BigRational;

use crate::factory::{self, counterexample, parse_delta, properize, random_instance, CostModel};
use crate::local_ratio::{self, check_level_bound, check_level_bound_rd, check_structure, SolveResult};
use crate::model::{fraction_with_decimal, ExtValue, Instance};
use crate::{demand, oracle, primal_dual, trace};

#[derive(Parser, Debug)]
#[command(name = "lrsched", version, about = "Due-date growing approximations for single machine min-sum scheduling")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate an instance file.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Run an algorithm on an instance file.
    Solve(SolveArgs),
    /// Tabulate the primal-dual gap on an instance family.
    Gap(GapArgs),
}

#[derive(Subcommand, Debug)]
pub enum GenKind {
    /// Four-job gap family.
    Counterexample {
        #[arg(long)]
        p: usize,
        /// Apply the dummy-job shift so no job costs less than at its length.
        #[arg(long)]
        properize: bool,
        /// Shift amount for --properize, as N/D.
        #[arg(long, default_value = "1/100", requires = "properize")]
        delta: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Seeded random instance.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pmax: usize,
        #[arg(long, default_value_t = 1)]
        kappa: usize,
        #[arg(long, default_value = "step")]
        cost: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Lr,
    LrRd,
    Pd,
    Oracle,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(long, value_enum)]
    pub algo: Algo,
    #[arg(short, long)]
    pub input: PathBuf,
    /// Print the per-iteration table.
    #[arg(long)]
    pub trace: bool,
    /// Recompute the per-level bounds (lr) or dual checks (pd) from the run.
    #[arg(long)]
    pub check_bounds: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Counterexample,
}

#[derive(Args, Debug)]
pub struct GapArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
    pub p_list: Vec<usize>,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(true) => 0,
        Ok(false) => 2,
        Err(e) => {
            let _ = writeln!(err, "error: {:#}", e);
            1
        }
    }
}

/// Returns `Ok(false)` when an invariant check failed.
fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool> {
    match &cli.command {
        Command::Gen { kind } => gen(kind, out).map(|_| true),
        Command::Solve(args) => solve(args, out),
        Command::Gap(args) => gap(args, out, err),
    }
}

fn emit(inst: &Instance, output: &Option<PathBuf>, out: &mut dyn Write) -> Result<()> {
    match output {
        Some(path) => factory::write_instance(inst, path)
            .with_context(|| format!("writing {}", path.display()))?,
        None => writeln!(out, "{}", factory::to_json(inst))?,
    }
    Ok(())
}

fn gen(kind: &GenKind, out: &mut dyn Write) -> Result<()> {
    match kind {
        GenKind::Counterexample { p, properize: prop, delta, output } => {
            let mut inst = counterexample(*p)?;
            if *prop {
                inst = properize(&inst, &parse_delta(delta)?)?;
            }
            emit(&inst, output, out)
        }
        GenKind::Random { seed, n, pmax, kappa, cost, output } => {
            let model: CostModel = cost.parse()?;
            emit(&random_instance(*seed, *n, *pmax, *kappa, model)?, output, out)
        }
    }
}

fn ratio_text(num: &ExtValue, den: &BigRational) -> String {
    match num {
        ExtValue::Finite(p) if !num::Zero::is_zero(den) => fraction_with_decimal(&(p / den)),
        ExtValue::Infinity => "inf".into(),
        _ => "undefined".into(),
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn solve(args: &SolveArgs, out: &mut dyn Write) -> Result<bool> {
    let inst = factory::read_instance(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let report = inst.validate();
    if !report.is_valid() {
        bail!("invalid instance: {}", report);
    }
    match args.algo {
        Algo::Lr | Algo::LrRd => {
            let res = if args.algo == Algo::Lr {
                local_ratio::lr_cs(&inst)?
            } else {
                local_ratio::lr_cs_rd(&inst)?
            };
            if args.trace {
                write!(out, "{}", trace::render_lr(&res))?;
            }
            print_lr(&inst, &res, out)?;
            if args.check_bounds {
                return check_lr(&inst, &res, args.algo == Algo::LrRd, out);
            }
            Ok(true)
        }
        Algo::Pd => {
            let res = primal_dual::cheung_shmoys(&inst)?;
            if args.trace {
                write!(out, "{}", trace::render_pd(&res))?;
            }
            writeln!(
                out,
                "primal={} dual={} gap={}",
                res.primal_cost,
                res.dual_objective,
                ratio_text(&res.primal_cost, &res.dual_objective)
            )?;
            let feasible = demand::is_feasible(&inst, &res.due_dates) && res.schedule.meets(&res.due_dates);
            writeln!(out, "due_dates={} feasible={}", res.due_dates, if feasible { "yes" } else { "no" })?;
            let mut ok = feasible;
            if args.check_bounds {
                let dual_ok = primal_dual::check_dual_feasibility(&res.duals, &inst);
                writeln!(out, "dual_feasibility: {}", verdict(dual_ok))?;
                let cover = primal_dual::check_appendix_property(&res, &inst);
                for e in &cover.entries {
                    let ids: Vec<String> = e.set.iter().map(|j| (j + 1).to_string()).collect();
                    writeln!(
                        out,
                        "cover t={} A={{{}}} sum={} D={} ratio={}{}",
                        e.t,
                        ids.join(","),
                        e.sum,
                        e.demand,
                        fraction_with_decimal(&e.ratio),
                        if e.violates { " exceeds 2" } else { "" }
                    )?;
                }
                writeln!(
                    out,
                    "cover_property: {}",
                    if cover.holds() { "holds" } else { "violated" }
                )?;
                ok &= dual_ok;
            }
            Ok(ok)
        }
        Algo::Oracle => {
            let res = oracle::brute_force_opt(&inst)?;
            let order: Vec<String> = res.order.iter().map(|j| (j + 1).to_string()).collect();
            writeln!(out, "opt={}", res.opt_cost)?;
            writeln!(out, "order=({}) completion={:?}", order.join(","), res.witness.completion)?;
            Ok(true)
        }
    }
}

fn print_lr(inst: &Instance, res: &SolveResult, out: &mut dyn Write) -> Result<()> {
    writeln!(
        out,
        "primal={} lower_bound={} ratio={}",
        res.primal_cost,
        res.lower_bound,
        ratio_text(&res.primal_cost, &res.lower_bound)
    )?;
    let feasible = demand::is_feasible(inst, &res.final_sigma) && res.schedule.meets(&res.final_sigma);
    writeln!(out, "due_dates={} feasible={}", res.final_sigma, if feasible { "yes" } else { "no" })?;
    Ok(())
}

fn check_lr(inst: &Instance, res: &SolveResult, release: bool, out: &mut dyn Write) -> Result<bool> {
    let bound = if release { check_level_bound_rd(inst, res) } else { check_level_bound(inst, res) };
    let max = bound.max_ratio.as_ref().map(fraction_with_decimal).unwrap_or_else(|| "none".into());
    writeln!(
        out,
        "level_bound: {} ({} levels, factor {}, max ratio {})",
        verdict(bound.passed()),
        bound.levels.len(),
        bound.factor,
        max
    )?;
    for problem in &bound.problems {
        writeln!(out, "  {}", problem)?;
    }
    let structure = check_structure(inst, res);
    writeln!(out, "structure: {}", verdict(structure.passed()))?;
    for problem in &structure.problems {
        writeln!(out, "  {}", problem)?;
    }
    Ok(bound.passed() && structure.passed())
}

fn gap(args: &GapArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool> {
    let Family::Counterexample = args.family;
    let mut ok = true;
    for &p in &args.p_list {
        let inst = match counterexample(p) {
            Ok(inst) => inst,
            Err(e) => {
                writeln!(err, "warning: skipping p={}: {}", p, e)?;
                continue;
            }
        };
        let pd = primal_dual::cheung_shmoys(&inst)?;
        let lr = local_ratio::lr_cs(&inst)?;
        let expected = BigRational::new((4 * p).into(), (p + 2).into());
        let gap = pd.gap();
        writeln!(
            out,
            "p={} pd_primal={} dual={} gap={} lr_primal={} lower_bound={} expected={}",
            p,
            pd.primal_cost,
            pd.dual_objective,
            ratio_text(&pd.primal_cost, &pd.dual_objective),
            lr.primal_cost,
            lr.lower_bound,
            expected
        )?;
        ok &= gap.as_ref() == Some(&expected);
    }
    Ok(ok)
}
