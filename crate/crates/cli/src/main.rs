//! `heytlab`: finite formal topologies, their frames of stable lower sets,
//! Heyting-valued evaluation of set formulas, and the law suites.
//!
//! Exit codes: 0 success, 1 validation or suite failure, 2 unusable input
//! (parse error, unbound identifier, missing file), 3 ceiling refusal.

use clap::{Parser, Subcommand, ValueEnum};
use heytlab_cli::files::{self, FileError};
use heytlab_cli::report::{self, EvalRecord};
use heytlab_cli::{ceilings_from_env, Format, RunConfig};
use heytlab_core::eval::{Environment, EvalError, Evaluator};
use heytlab_core::formula;
use heytlab_core::frame::Frame;
use heytlab_core::hf;
use heytlab_core::inductive::{InductiveDefinition, InductiveError};
use heytlab_core::name::{NameError, NameUniverse};
use heytlab_core::suite::{self, SuiteConfig, SuiteOutcome};
use heytlab_core::topology::FormalTopology;
use heytlab_core::Ceilings;
use serde_json::Value;
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "heytlab", version, about = "Heyting-valued set semantics workbench")]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, ValueEnum)]
enum FormatArg {
    Json,
    Md,
}

#[derive(Copy, Clone, ValueEnum)]
enum ModeArg {
    Base,
    Boolean,
    Relativized,
}

impl ModeArg {
    fn label(self) -> &'static str {
        match self {
            ModeArg::Base => "base",
            ModeArg::Boolean => "boolean",
            ModeArg::Relativized => "relativized",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check a topology file against the poset laws and covering axioms.
    CheckTopology { path: PathBuf },
    /// Enumerate the frame of stable lower sets, with op tables.
    Frame { path: PathBuf },
    /// Enumerate the name universe over a topology's frame.
    Names {
        path: PathBuf,
        /// Maximum name rank.
        #[arg(long, default_value_t = 2)]
        rank: u32,
        /// Maximum domain width per name.
        #[arg(long, default_value_t = 2)]
        width: usize,
    },
    /// Evaluate a closed formula over a topology's frame.
    Eval {
        formula: PathBuf,
        topology: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Base)]
        mode: ModeArg,
        /// Universe rank bound.
        #[arg(long, default_value_t = 2)]
        rank: u32,
        /// Universe width bound.
        #[arg(long, default_value_t = 2)]
        width: usize,
        /// Rank bound of the sub-universe quantifiers range over in
        /// relativized mode.
        #[arg(long, default_value_t = 1)]
        sub_rank: u32,
    },
    /// Survey transitive hereditarily finite sets for regularity.
    Census {
        #[arg(long, default_value_t = 3)]
        max_rank: u32,
        #[arg(long, default_value_t = 8)]
        max_size: usize,
        /// Drop rows below this rank; an inverted range yields no rows.
        #[arg(long, default_value_t = 0)]
        min_rank: u32,
    },
    /// Run an inductive definition from a rule file to its fixed point.
    Inductive {
        rules: PathBuf,
        /// Universe size; defaults to one past the largest atom mentioned.
        #[arg(long)]
        universe: Option<usize>,
        /// Number of iteration stages to report.
        #[arg(long)]
        stages: Option<usize>,
    },
    /// Run the law suites and report per-suite outcomes.
    Suite {
        /// Only run suites whose name contains this substring.
        #[arg(long)]
        filter: Option<String>,
        /// Seed for the randomized suites.
        #[arg(long)]
        seed: Option<u64>,
        /// Corrupt a frame op table first; the lattice suite must then
        /// fail. A self-test hook, not a user feature.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

/// exit 2: the input cannot be used.
fn usage(e: impl Display) -> i32 {
    eprintln!("error: {e}");
    2
}

/// exit 3: the request is well-formed but over a ceiling.
fn refuse(e: impl Display) -> i32 {
    eprintln!("error: {e}");
    3
}

fn emit(format: Format, json: Value, md: String) {
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&json).expect("reports serialize"))
        }
        Format::Md => print!("{md}"),
    }
}

fn read(path: &Path) -> Result<String, i32> {
    std::fs::read_to_string(path).map_err(|e| usage(format_args!("{}: {e}", path.display())))
}

fn load_topology(path: &Path, ceilings: &Ceilings) -> Result<FormalTopology, i32> {
    let src = read(path)?;
    files::parse_topology(&src, ceilings).map_err(|e| match e {
        FileError::Syntax { .. } => usage(format_args!("{}: {e}", path.display())),
        FileError::Ceiling { .. } => refuse(e),
    })
}

/// Loads, parses, and validates; an axiom violation prints the validation
/// report and exits 1, since downstream commands need a real frame.
fn load_valid_topology(
    path: &Path,
    ceilings: &Ceilings,
    format: Format,
) -> Result<FormalTopology, i32> {
    let topo = load_topology(path, ceilings)?;
    let report = topo.validate();
    if !report.is_valid() {
        emit(format, report::topology_json(&topo, &report), report::topology_md(&topo, &report));
        return Err(1);
    }
    Ok(topo)
}

fn name_exit(e: NameError) -> i32 {
    match e {
        NameError::Bound { .. } => refuse(e),
        other => usage(other),
    }
}

fn eval_exit(e: EvalError) -> i32 {
    match e {
        EvalError::Name(NameError::Bound { .. }) => refuse(e),
        other => usage(other),
    }
}

fn run(cli: Cli) -> i32 {
    let ceilings = match ceilings_from_env(|k| std::env::var(k).ok()) {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Md => Format::Md,
    };
    let cfg = RunConfig { format, seed: SuiteConfig::default().seed, ceilings };

    match cli.command {
        Command::CheckTopology { path } => cmd_check_topology(&path, &cfg),
        Command::Frame { path } => cmd_frame(&path, &cfg),
        Command::Names { path, rank, width } => cmd_names(&path, rank, width, &cfg),
        Command::Eval { formula, topology, mode, rank, width, sub_rank } => {
            cmd_eval(&formula, &topology, mode, rank, width, sub_rank, &cfg)
        }
        Command::Census { max_rank, max_size, min_rank } => {
            cmd_census(max_rank, max_size, min_rank, &cfg)
        }
        Command::Inductive { rules, universe, stages } => {
            cmd_inductive(&rules, universe, stages, &cfg)
        }
        Command::Suite { filter, seed, inject_fault } => {
            cmd_suite(filter.as_deref(), seed, inject_fault, &cfg)
        }
    }
}

fn cmd_check_topology(path: &Path, cfg: &RunConfig) -> i32 {
    let topo = match load_topology(path, &cfg.ceilings) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let report = topo.validate();
    emit(cfg.format, report::topology_json(&topo, &report), report::topology_md(&topo, &report));
    if report.is_valid() {
        0
    } else {
        1
    }
}

fn cmd_frame(path: &Path, cfg: &RunConfig) -> i32 {
    let topo = match load_valid_topology(path, &cfg.ceilings, cfg.format) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let frame = Frame::enumerate(&topo).expect("validated topology enumerates");
    emit(cfg.format, report::frame_json(&frame), report::frame_md(&frame));
    0
}

fn cmd_names(path: &Path, rank: u32, width: usize, cfg: &RunConfig) -> i32 {
    let topo = match load_valid_topology(path, &cfg.ceilings, cfg.format) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let frame = Arc::new(Frame::enumerate(&topo).expect("validated topology enumerates"));
    let universe = match NameUniverse::enumerate(frame, rank, width, &cfg.ceilings) {
        Ok(u) => u,
        Err(e) => return name_exit(e),
    };
    emit(cfg.format, report::names_json(&universe), report::names_md(&universe));
    0
}

fn cmd_eval(
    formula_path: &Path,
    topology_path: &Path,
    mode: ModeArg,
    rank: u32,
    width: usize,
    sub_rank: u32,
    cfg: &RunConfig,
) -> i32 {
    let src = match read(formula_path) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let formula = match formula::parse(&src) {
        Ok(f) => f,
        Err(e) => return usage(format_args!("{}: {e}", formula_path.display())),
    };
    let topo = match load_valid_topology(topology_path, &cfg.ceilings, cfg.format) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let frame = Arc::new(Frame::enumerate(&topo).expect("validated topology enumerates"));
    let universe =
        match NameUniverse::enumerate(Arc::clone(&frame), rank, width, &cfg.ceilings) {
            Ok(u) => Arc::new(u),
            Err(e) => return name_exit(e),
        };
    let evaluator = Evaluator::new(Arc::clone(&frame));
    let env = Environment::new(Arc::clone(&universe));
    let value = match mode {
        ModeArg::Base => evaluator.eval(&formula, &env),
        ModeArg::Boolean => evaluator.eval_boolean(&formula, &env),
        ModeArg::Relativized => {
            let sub: Vec<_> =
                universe.names().iter().filter(|n| n.rank() <= sub_rank).cloned().collect();
            evaluator.eval_relativized(&formula, &sub, &env)
        }
    };
    let value = match value {
        Ok(v) => v,
        Err(e) => return eval_exit(e),
    };
    let label = topology_path.file_stem().unwrap_or_default().to_string_lossy();
    let record = EvalRecord {
        formula: src.trim(),
        frame_label: &label,
        mode: mode.label(),
        topo: &topo,
        value: value.bits(),
        is_top: value.bits() == topo.carrier(),
        rank,
        width,
        bounded: formula.is_bounded(),
    };
    emit(cfg.format, report::eval_json(&record), report::eval_md(&record));
    0
}

fn cmd_census(max_rank: u32, max_size: usize, min_rank: u32, cfg: &RunConfig) -> i32 {
    let mut rows = match hf::census(max_rank, max_size, &cfg.ceilings) {
        Ok(rows) => rows,
        Err(e @ hf::HfError::Ceiling { .. }) => return refuse(e),
        Err(e) => return usage(e),
    };
    rows.retain(|r| r.set.rank() >= min_rank);
    emit(cfg.format, report::census_json(&rows), report::census_md(&rows));
    0
}

fn cmd_inductive(
    rules_path: &Path,
    universe: Option<usize>,
    stages: Option<usize>,
    cfg: &RunConfig,
) -> i32 {
    let src = match read(rules_path) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let rules = match files::parse_rules(&src) {
        Ok(r) => r,
        Err(e) => return usage(format_args!("{}: {e}", rules_path.display())),
    };
    let implied = rules
        .iter()
        .flat_map(|(xs, c)| xs.iter().chain(std::iter::once(c)))
        .max()
        .map_or(0, |m| m + 1);
    let universe = universe.unwrap_or(implied);
    let refs: Vec<(&[usize], usize)> = rules.iter().map(|(xs, c)| (xs.as_slice(), *c)).collect();
    let def = match InductiveDefinition::new(universe, &refs) {
        Ok(d) => d,
        Err(e @ InductiveError::UniverseTooLarge { .. }) => return refuse(e),
        Err(e) => return usage(e),
    };
    let stage_count = stages.unwrap_or(universe);
    let stages = def.iteration_class(stage_count);
    emit(cfg.format, report::inductive_json(&def, &stages), report::inductive_md(&def, &stages));
    0
}

fn cmd_suite(filter: Option<&str>, seed: Option<u64>, inject_fault: bool, cfg: &RunConfig) -> i32 {
    let suite_cfg = SuiteConfig { seed: seed.unwrap_or(cfg.seed), ceilings: cfg.ceilings };
    let outcomes: Vec<SuiteOutcome> = if inject_fault {
        let started = Instant::now();
        let outcome = suite::faulted_lattice_outcome();
        eprintln!(
            "{}: {} checks, {} failures in {} ms",
            outcome.suite,
            outcome.checks,
            outcome.failures,
            started.elapsed().as_millis()
        );
        vec![outcome]
    } else {
        suite::registry()
            .iter()
            .filter(|s| filter.is_none_or(|f| s.name.contains(f)))
            .map(|s| {
                let started = Instant::now();
                let outcome = s.run(&suite_cfg);
                eprintln!(
                    "{}: {} checks, {} failures in {} ms",
                    outcome.suite,
                    outcome.checks,
                    outcome.failures,
                    started.elapsed().as_millis()
                );
                outcome
            })
            .collect()
    };
    emit(
        cfg.format,
        report::suite_json(&outcomes, suite_cfg.seed),
        report::suite_md(&outcomes, suite_cfg.seed),
    );
    if outcomes.iter().all(SuiteOutcome::passed) {
        0
    } else {
        1
    }
}
