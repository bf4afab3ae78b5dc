//! Command-line surface: `criteria`, `verify`, `tn` and `beta`
//! subcommands with deterministic JSON/CSV reports.
//!
//! Exit codes: 0 success, 1 counterexample or failed equality
//! assertion, 2 config or contract error, 3 capacity error, 4 numeric
//! error.

mod config;
mod report;
pub mod suites;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::criteria::{evaluate, CriterionId, ModelRef, OptimizeOptions};
use crate::kssolver::{tn_direct_table, DomainMask, TnModel, TnTable};
use crate::models::rational_to_f64;
use crate::{Error, Result};

pub use config::{load_config, parse_rational, NamedModel, ParsedModel};
pub use report::{emit, sig9, RunReport, TaskResult, TnEntry, TOOL_NAME, TOOL_VERSION};

#[derive(Parser)]
#[command(
    name = "clusterkit",
    version,
    about = "Cluster-expansion bounds and identity checks for hard-core polymer systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate convergence criteria on the models of a config file.
    Criteria {
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated criterion names; defaults to all applicable.
        #[arg(long)]
        criterion: Option<String>,
        /// Optimizer tolerance on the ansatz parameter.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value = "json", value_parser = ["json", "csv", "both"])]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run the model x criterion tasks on worker threads.
        #[arg(long)]
        parallel: bool,
    },
    /// Run seeded identity/property suites.
    Verify {
        /// Optional config; a point-config model is used as a fixed
        /// instance in addition to the random trials.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Comma-separated suite names.
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, default_value = "json", value_parser = ["json", "csv", "both"])]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Truncated partial sums of a domain under a subset-polymer model.
    Tn {
        #[arg(long)]
        config: PathBuf,
        /// Model id to use; defaults to the first lattice-shape or
        /// rods-discrete model in the config.
        #[arg(long)]
        model: Option<String>,
        /// Domain cells, e.g. "0;1;4" in one dimension or "0,0;1,0" in two.
        #[arg(long)]
        domain: String,
        /// Truncation order.
        #[arg(long)]
        n: u32,
        /// Activity as an exact rational "p/q".
        #[arg(long)]
        z: String,
        #[arg(long, default_value = "recursive", value_parser = ["recursive", "direct", "both"])]
        mode: String,
        #[arg(long, default_value = "json", value_parser = ["json", "csv", "both"])]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized sweep of the beta lower-bound coefficients.
    Beta {
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        q_max: usize,
        #[arg(long, default_value_t = 3.0)]
        mu_max: f64,
        #[arg(long, default_value = "json", value_parser = ["json", "csv", "both"])]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::Contract(_) | Error::Io(_) => 2,
        Error::Capacity(_) => 3,
        Error::Numeric(_) => 4,
    }
}

/// Entry point for the binary.
pub fn run() -> i32 {
    run_with(std::env::args_os())
}

/// Testable entry point.
pub fn run_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Criteria {
            config,
            criterion,
            tol,
            format,
            out,
            parallel,
        } => cmd_criteria(&config, criterion.as_deref(), tol, &format, out.as_deref(), parallel),
        Command::Verify {
            config,
            suite,
            seed,
            trials,
            format,
            out,
        } => cmd_verify(config.as_deref(), &suite, seed, trials, &format, out.as_deref()),
        Command::Tn {
            config,
            model,
            domain,
            n,
            z,
            mode,
            format,
            out,
        } => cmd_tn(&config, model.as_deref(), &domain, n, &z, &mode, &format, out.as_deref()),
        Command::Beta {
            trials,
            seed,
            q_max,
            mu_max,
            format,
            out,
        } => cmd_beta(trials, seed, q_max, mu_max, &format, out.as_deref()),
    }
}

fn model_ref(parsed: &ParsedModel) -> Option<ModelRef<'_>> {
    match parsed {
        ParsedModel::Abstract(s) => Some(ModelRef::Abstract(s)),
        ParsedModel::Lattice(m) => Some(ModelRef::Lattice(m)),
        ParsedModel::RodsDiscrete(r) => Some(ModelRef::RodsDiscrete(r)),
        ParsedModel::RodsContinuous(r) => Some(ModelRef::RodsContinuous(r)),
        ParsedModel::Balls(b) => Some(ModelRef::Balls(b)),
        ParsedModel::Points(_) => None,
    }
}

fn cmd_criteria(
    config: &std::path::Path,
    criterion: Option<&str>,
    tol: f64,
    format: &str,
    out: Option<&std::path::Path>,
    parallel: bool,
) -> Result<i32> {
    let (models, digest) = load_config(config)?;
    let selected: Option<Vec<CriterionId>> = match criterion {
        None => None,
        Some(list) => Some(
            list.split(',')
                .map(|name| {
                    CriterionId::parse(name.trim()).ok_or_else(|| {
                        Error::config(format!("unknown criterion {name:?}"))
                    })
                })
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    let opts = OptimizeOptions::with_tol(tol);

    // Build the task list up front so ordering is deterministic.
    let mut tasks: Vec<(usize, CriterionId)> = Vec::new();
    for (idx, named) in models.iter().enumerate() {
        let Some(mref) = model_ref(&named.model) else {
            if selected.is_some() {
                return Err(Error::config(format!(
                    "model {:?} (point-config) supports no criteria",
                    named.id
                )));
            }
            continue;
        };
        let applicable = mref.applicable_criteria();
        match &selected {
            None => tasks.extend(applicable.iter().map(|&c| (idx, c))),
            Some(list) => {
                for &c in list {
                    if !applicable.contains(&c) {
                        return Err(Error::config(format!(
                            "criterion {c} is not applicable to model {:?} ({})",
                            named.id,
                            named.model.kind_name()
                        )));
                    }
                    tasks.push((idx, c));
                }
            }
        }
    }

    let run_task = |&(idx, c): &(usize, CriterionId)| -> Result<TaskResult> {
        let named = &models[idx];
        let mref = model_ref(&named.model).expect("filtered above");
        let start = Instant::now();
        let rep = evaluate(&mref, c, &named.id, opts)?;
        eprintln!(
            "task {}/{c} finished in {:.1} ms",
            named.id,
            start.elapsed().as_secs_f64() * 1e3
        );
        Ok(TaskResult::Criterion { report: rep })
    };

    let results: Vec<Result<TaskResult>> = if parallel {
        std::thread::scope(|scope| {
            let handles: Vec<_> = tasks
                .iter()
                .map(|t| scope.spawn(move || run_task(t)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("criterion task panicked"))
                .collect()
        })
    } else {
        tasks.iter().map(run_task).collect()
    };

    let mut report = RunReport::new();
    report.config_digest = Some(digest);
    report.tol = Some(tol);
    for r in results {
        report.tasks.push(r?);
    }
    emit(&report, format, out)?;
    Ok(0)
}

fn cmd_verify(
    config: Option<&std::path::Path>,
    suite: &str,
    seed: u64,
    trials: u64,
    format: &str,
    out: Option<&std::path::Path>,
) -> Result<i32> {
    let mut fixed_cfg = None;
    let mut digest = None;
    if let Some(path) = config {
        let (models, d) = load_config(path)?;
        digest = Some(d);
        for named in models {
            if let ParsedModel::Points(cfg) = named.model {
                fixed_cfg = Some(cfg);
                break;
            }
        }
    }
    let mut report = RunReport::new();
    report.config_digest = digest;
    report.seed = Some(seed);
    let mut failed = false;
    for name in suite.split(',') {
        let start = Instant::now();
        let outcome = suites::run_suite(name.trim(), seed, trials, fixed_cfg.as_ref())?;
        eprintln!(
            "suite {} finished in {:.1} ms",
            outcome.suite,
            start.elapsed().as_secs_f64() * 1e3
        );
        failed |= !outcome.passed();
        report.tasks.push(TaskResult::Verify {
            suite: outcome.suite,
            seed: outcome.seed,
            trials: outcome.trials,
            counterexamples: outcome.counterexamples,
            stats: outcome.stats,
        });
    }
    emit(&report, format, out)?;
    Ok(if failed { 1 } else { 0 })
}

fn parse_domain(text: &str, dimension: usize) -> Result<DomainMask> {
    let mut cells = Vec::new();
    for part in text.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let coords: Vec<i64> = part
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::config(format!("bad domain coordinate {c:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if coords.len() != dimension {
            return Err(Error::config(format!(
                "domain cell {part:?} has {} coordinates, expected {dimension}",
                coords.len()
            )));
        }
        cells.push(coords);
    }
    DomainMask::new(dimension, &cells)
}

#[allow(clippy::too_many_arguments)]
fn cmd_tn(
    config: &std::path::Path,
    model_id: Option<&str>,
    domain: &str,
    n: u32,
    z: &str,
    mode: &str,
    format: &str,
    out: Option<&std::path::Path>,
) -> Result<i32> {
    let (models, digest) = load_config(config)?;
    let (id, model) = models
        .iter()
        .filter(|named| model_id.is_none_or(|want| named.id == want))
        .find_map(|named| match &named.model {
            ParsedModel::Lattice(m) => Some((named.id.clone(), TnModel::Lattice(m))),
            ParsedModel::RodsDiscrete(r) => Some((named.id.clone(), TnModel::Rods(r))),
            _ => None,
        })
        .ok_or_else(|| {
            Error::config("tn needs a lattice-shape or rods-discrete model in the config")
        })?;
    let zr = parse_rational(z)?;
    let dom = parse_domain(domain, model.dimension())?;

    let mut entries = Vec::new();
    let mut mismatch = false;
    let direct_table = match mode {
        "direct" | "both" if !dom.is_empty() => Some(tn_direct_table(&model, &dom, n)?),
        _ => None,
    };
    let mut recursive = match mode {
        "recursive" | "both" => Some(TnTable::new(model, zr.clone())?),
        _ => None,
    };
    for order in 1..=n {
        let (exact, direct_equal) = match (&mut recursive, &direct_table) {
            (Some(table), None) => (table.value(&dom, order)?, None),
            (None, Some(direct)) => (direct.eval(order, &zr)?, None),
            (Some(table), Some(direct)) => {
                let r = table.value(&dom, order)?;
                let d = direct.eval(order, &zr)?;
                let eq = r == d;
                mismatch |= !eq;
                (r, Some(eq))
            }
            (None, None) => (num::BigRational::from_integer(1.into()), None),
        };
        entries.push(TnEntry {
            n: order,
            float: rational_to_f64(&exact),
            exact: exact.to_string(),
            direct_equal,
        });
    }
    let mut report = RunReport::new();
    report.config_digest = Some(digest);
    report.tasks.push(TaskResult::Tn {
        model_id: id,
        domain: domain.to_string(),
        z: z.to_string(),
        mode: mode.to_string(),
        entries,
    });
    emit(&report, format, out)?;
    Ok(if mismatch { 1 } else { 0 })
}

fn cmd_beta(
    trials: u64,
    seed: u64,
    q_max: usize,
    mu_max: f64,
    format: &str,
    out: Option<&std::path::Path>,
) -> Result<i32> {
    let sweep = crate::kssolver::beta_min_random(trials, seed, q_max, mu_max)?;
    let mut report = RunReport::new();
    report.seed = Some(seed);
    report.tasks.push(TaskResult::Beta {
        trials,
        seed,
        q_max,
        mu_max,
        min_beta: sweep.min_beta,
    });
    emit(&report, format, out)?;
    Ok(if sweep.min_beta >= 1.0 - 1e-12 { 0 } else { 1 })
}
