//! The `infmax` command-line tool.
//!
//! Every command reads a JSON model file (see [`ising_infmax::model::ModelFile`])
//! and writes a JSON [`report::RunReport`], except `compare`, which writes
//! CSV, and `gen`, which writes a model file.

pub mod compare;
pub mod config;
pub mod report;

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ising_infmax::estimate::{estimate_influence, is_low_temperature, Estimate, SamplerConfig};
use ising_infmax::influence::{global_influence, InfluenceQuery};
use ising_infmax::model::{parse_model, random_instance, random_weights, write_model, IsingModel, PartialAssignment, WeightVector};
use ising_infmax::reduction::{estimate_marginal, MarginalEstimate};
use ising_infmax::solver::{brute_force_infmax, solve_infmax, ExhaustiveSolver, InfMaxSolver, LocalizedSolver, Objective};
use ising_infmax::{exact, Error};

use compare::{GenParams, Instance};
use config::{parse_pins, FileConfig, SolverFlags, SolverSettings};
use report::{emit, emit_json, Inputs, RunReport};

/// Exit status for bad input or failed validation.
pub const EXIT_INPUT: u8 = 2;
/// Exit status when exact inference would exceed its cap.
pub const EXIT_CAPACITY: u8 = 3;
/// Exit status when the marginal search fails to converge.
pub const EXIT_NONCONVERGENCE: u8 = 4;

/// Largest model the oracle accepts without `--force`.
pub const ORACLE_LIMIT: usize = 16;

#[derive(Parser, Debug)]
#[command(name = "infmax", version, about = "Budgeted influence maximization on sparse Ising models")]
pub struct Cli {
    /// Worker threads; overrides INFMAX_THREADS
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the localized solver on a model file
    Solve(SolveArgs),
    /// Exhaustive search over all pinnings of size <= k
    Oracle(OracleArgs),
    /// Solver against oracle on model files or generated instances, as CSV
    Compare(CompareArgs),
    /// Monte Carlo estimate of the influence of a pinning
    Sample(SampleArgs),
    /// Recover a vertex marginal by binary search over an influence maximizer
    EstimateMarginal(MarginalArgs),
    /// Write a random model file
    Gen(GenArgs),
}

#[derive(Args, Debug)]
pub struct Common {
    /// TOML file with default settings; flags take precedence
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Record wall-clock time in the report
    #[arg(long)]
    pub timing: bool,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    pub model: PathBuf,
    #[command(flatten)]
    pub solver: SolverFlags,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjectiveArg {
    Global,
    Local,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    pub model: PathBuf,
    /// Budget [default: 1]
    #[arg(long)]
    pub k: Option<usize>,
    /// Maximize global or local influence
    #[arg(long, value_enum, default_value = "global")]
    pub objective: ObjectiveArg,
    /// Radius for the local objective [default: 0]
    #[arg(long)]
    pub radius: Option<usize>,
    /// Largest component handled by exact enumeration [default: 25]
    #[arg(long)]
    pub cap: Option<usize>,
    /// Allow models with more than 16 vertices
    #[arg(long)]
    pub force: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    /// Model files; when absent, instances are generated
    pub models: Vec<PathBuf>,
    /// Budgets to run, comma separated [default: 1]
    #[arg(long = "budgets", value_delimiter = ',')]
    pub budgets: Vec<usize>,
    /// Number of generated instances
    #[arg(long, default_value_t = 100)]
    pub instances: usize,
    /// First generator seed
    #[arg(long)]
    pub seed: Option<u64>,
    /// Vertices per generated instance
    #[arg(long, default_value_t = 12)]
    pub n: usize,
    /// Max degree of generated instances
    #[arg(long = "gen-degree", default_value_t = 3)]
    pub gen_degree: usize,
    /// Couplings are uniform on [-beta, beta]
    #[arg(long, default_value_t = 0.4)]
    pub beta: f64,
    /// Fields are uniform on [-field, field]
    #[arg(long, default_value_t = 0.5)]
    pub field: f64,
    #[command(flatten)]
    pub solver: SolverFlags,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    pub model: PathBuf,
    /// Pinning such as `0=+,3=-`
    #[arg(long, default_value = "")]
    pub pin: String,
    /// Number of samples per chain [default: 10000]
    #[arg(long)]
    pub samples: Option<usize>,
    /// Burn-in steps [default: 100 n ln n]
    #[arg(long)]
    pub burn_in: Option<usize>,
    /// Steps between samples [default: n]
    #[arg(long)]
    pub thin: Option<usize>,
    /// Generator seed [default: 0]
    #[arg(long)]
    pub seed: Option<u64>,
    /// Also report the exact value when it is within the cap
    #[arg(long)]
    pub exact: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverChoice {
    Oracle,
    Localized,
}

#[derive(Args, Debug)]
pub struct MarginalArgs {
    pub model: PathBuf,
    /// Target vertex
    #[arg(long)]
    pub vertex: usize,
    /// Search stops when the bracket is this narrow on each side [default: 0.01]
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Influence maximizer answering the probes
    #[arg(long, value_enum, default_value = "oracle")]
    pub solver: SolverChoice,
    #[command(flatten)]
    pub flags: SolverFlags,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WeightMode {
    /// a = 1 everywhere
    Ones,
    /// a uniform on [-1, 1]
    Random,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 3)]
    pub max_degree: usize,
    /// Couplings are uniform on [-beta, beta]
    #[arg(long, default_value_t = 0.4)]
    pub beta: f64,
    /// Fields are uniform on [-field, field]
    #[arg(long, default_value_t = 0.5)]
    pub field: f64,
    #[arg(long, value_enum, default_value = "ones")]
    pub weights: WeightMode,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Maps an error to the process exit status.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    match err.chain().find_map(|e| e.downcast_ref::<Error>()) {
        Some(e) if e.is_capacity() => EXIT_CAPACITY,
        Some(Error::NonConvergence { .. }) => EXIT_NONCONVERGENCE,
        _ => EXIT_INPUT,
    }
}

/// Sizes the global thread pool from `--threads` or `INFMAX_THREADS`.
pub fn configure_threads(flag: Option<usize>) -> Result<()> {
    let n = match flag {
        Some(n) => Some(n),
        None => match std::env::var("INFMAX_THREADS") {
            Ok(s) => Some(s.trim().parse().with_context(|| format!("INFMAX_THREADS = `{s}` is not a count"))?),
            Err(_) => None,
        },
    };
    if let Some(n) = n {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

pub fn run(cli: Cli) -> Result<()> {
    configure_threads(cli.threads)?;
    match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Sample(args) => cmd_sample(args),
        Command::EstimateMarginal(args) => cmd_estimate_marginal(args),
        Command::Gen(args) => cmd_gen(args),
    }
}

struct Loaded {
    model: IsingModel,
    weights: WeightVector,
    bytes: Vec<u8>,
}

fn load(path: &Path) -> Result<Loaded> {
    let bytes = std::fs::read(path).with_context(|| format!("reading model {}", path.display()))?;
    let text = std::str::from_utf8(&bytes).with_context(|| format!("{} is not UTF-8", path.display()))?;
    let (model, weights) = parse_model(text).with_context(|| format!("parsing model {}", path.display()))?;
    Ok(Loaded { model, weights, bytes })
}

fn elapsed(start: Instant, timing: bool) -> Option<f64> {
    timing.then(|| start.elapsed().as_secs_f64())
}

fn temperature_warning(model: &IsingModel) -> Option<String> {
    is_low_temperature(model).then(|| {
        "some coupling is at or beyond the uniqueness threshold; \
         no efficient approximation is expected and sampling may not mix"
            .to_string()
    })
}

fn cmd_solve(args: SolveArgs) -> Result<()> {
    let start = Instant::now();
    let file = FileConfig::load(args.common.config.as_deref())?;
    let settings = SolverSettings::resolve(&args.solver, &file);
    let input = load(&args.model)?;
    let family = settings.family_for(&input.model)?;
    let cfg = settings.config_for(&input.model);
    let sol = solve_infmax(&input.model, &input.weights, &family, &cfg)?;

    let mut warnings = Vec::new();
    if settings.best_effort {
        warnings.push("best-effort mode: the accuracy guarantee holds only if no radius or family warning follows".into());
    }
    warnings.extend(sol.warnings.iter().cloned());
    warnings.extend(temperature_warning(&input.model));
    let report = RunReport {
        command: "solve",
        inputs: Inputs::for_file(&args.model, &input.bytes, &settings),
        result: &sol,
        wall_time: elapsed(start, args.common.timing),
        warnings,
    };
    emit_json(&report, args.common.out.as_ref())
}

#[derive(Serialize)]
struct OracleSettings {
    k: usize,
    objective: ObjectiveArg,
    radius: Option<usize>,
    exact_ball_cap: usize,
}

fn cmd_oracle(args: OracleArgs) -> Result<()> {
    let start = Instant::now();
    let file = FileConfig::load(args.common.config.as_deref())?;
    let input = load(&args.model)?;
    if input.model.n() > ORACLE_LIMIT && !args.force {
        bail!(
            "the oracle is exponential in n; refusing n = {} > {ORACLE_LIMIT} without --force",
            input.model.n()
        );
    }
    let k = args.k.or(file.k).unwrap_or(1);
    let cap = args.cap.or(file.exact_ball_cap).unwrap_or(ising_infmax::model::DEFAULT_EXACT_CAP);
    let (objective, radius) = match args.objective {
        ObjectiveArg::Global => (Objective::Global, None),
        ObjectiveArg::Local => {
            let r = args.radius.unwrap_or(0);
            (Objective::Local(r), Some(r))
        }
    };
    let sol = brute_force_infmax(&input.model, &input.weights, k, objective, cap)?;
    let settings = OracleSettings {
        k,
        objective: args.objective,
        radius,
        exact_ball_cap: cap,
    };
    let report = RunReport {
        command: "oracle",
        inputs: Inputs::for_file(&args.model, &input.bytes, settings),
        result: &sol,
        wall_time: elapsed(start, args.common.timing),
        warnings: temperature_warning(&input.model).into_iter().collect(),
    };
    emit_json(&report, args.common.out.as_ref())
}

fn cmd_compare(args: CompareArgs) -> Result<()> {
    let file = FileConfig::load(args.common.config.as_deref())?;
    let settings = SolverSettings::resolve(&args.solver, &file);
    let budgets = if args.budgets.is_empty() {
        vec![args.solver.k.or(file.k).unwrap_or(1)]
    } else {
        args.budgets.clone()
    };
    let instances: Vec<Instance> = if args.models.is_empty() {
        let params = GenParams {
            n: args.n,
            max_degree: args.gen_degree,
            beta: (-args.beta, args.beta),
            field: (-args.field, args.field),
            weights: (-1.0, 1.0),
        };
        let first = args.seed.or(file.seed).unwrap_or(0);
        (0..args.instances as u64)
            .map(|i| params.instance(first + i))
            .collect::<Result<_>>()?
    } else {
        args.models
            .iter()
            .map(|path| {
                let input = load(path)?;
                let id = path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned());
                Ok(Instance {
                    id,
                    model: input.model,
                    weights: input.weights,
                })
            })
            .collect::<Result<_>>()?
    };
    for inst in &instances {
        if inst.model.n() > ORACLE_LIMIT {
            bail!("instance {} has n = {} > {ORACLE_LIMIT}; the oracle cannot run", inst.id, inst.model.n());
        }
    }
    let rows = compare::compare_all(&instances, &budgets, &settings, args.common.timing)?;
    let worst = rows.iter().filter_map(|r| r.gap).fold(f64::NEG_INFINITY, f64::max);
    eprintln!("{} rows, largest gap {worst}", rows.len());
    emit(&compare::to_csv(&rows)?, args.common.out.as_ref())
}

#[derive(Serialize)]
struct SampleResult {
    pinning: PartialAssignment,
    estimate: Estimate,
    exact: Option<f64>,
}

fn cmd_sample(args: SampleArgs) -> Result<()> {
    let start = Instant::now();
    let file = FileConfig::load(args.common.config.as_deref())?;
    let input = load(&args.model)?;
    let pinning = PartialAssignment::from_pairs(parse_pins(&args.pin)?)?;
    let mut sampler = SamplerConfig::new(
        args.samples.or(file.samples).unwrap_or(10_000),
        args.seed.or(file.seed).unwrap_or(0),
    );
    sampler.burn_in = args.burn_in.or(file.burn_in);
    sampler.thin = args.thin.or(file.thin);
    let estimate = estimate_influence(&input.model, &input.weights, &pinning, &sampler)?;
    let exact = if args.exact {
        let cap = file.exact_ball_cap.unwrap_or(ising_infmax::model::DEFAULT_EXACT_CAP);
        match global_influence(&InfluenceQuery::global(&input.model, &input.weights, &pinning).with_cap(cap)) {
            Ok(v) => Some(v),
            Err(e) if e.is_capacity() => None,
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };
    let warnings = estimate
        .low_temperature
        .then(|| "low-temperature model: the chain may not have mixed".to_string())
        .into_iter()
        .collect();
    let report = RunReport {
        command: "sample",
        inputs: Inputs::for_file(&args.model, &input.bytes, &sampler),
        result: SampleResult {
            pinning,
            estimate,
            exact,
        },
        wall_time: elapsed(start, args.common.timing),
        warnings,
    };
    emit_json(&report, args.common.out.as_ref())
}

#[derive(Serialize)]
struct MarginalSettings<'a> {
    vertex: usize,
    tolerance: f64,
    solver: SolverChoice,
    #[serde(flatten)]
    settings: &'a SolverSettings,
}

#[derive(Serialize)]
struct MarginalResult {
    #[serde(flatten)]
    estimate: MarginalEstimate,
    probability_plus: f64,
    exact: Option<f64>,
}

fn cmd_estimate_marginal(args: MarginalArgs) -> Result<()> {
    let start = Instant::now();
    let file = FileConfig::load(args.common.config.as_deref())?;
    let settings = SolverSettings::resolve(&args.flags, &file);
    let tolerance = args.tolerance.or(file.tolerance).unwrap_or(0.01);
    let input = load(&args.model)?;
    let solver: Box<dyn InfMaxSolver> = match args.solver {
        SolverChoice::Oracle => {
            if input.model.n() > ORACLE_LIMIT {
                bail!("the oracle is exponential in n; use --solver localized for n = {}", input.model.n());
            }
            Box::new(ExhaustiveSolver {
                cap: settings.exact_ball_cap,
            })
        }
        SolverChoice::Localized => {
            Box::new(LocalizedSolver {
                delta: settings.delta,
                delta_max: settings.max_degree,
                config: settings.config_for(&input.model),
            })
        }
    };
    let estimate = estimate_marginal(&input.model, args.vertex, settings.k, solver.as_ref(), tolerance)?;
    let exact = exact::PinnedModel::whole(&input.model, &PartialAssignment::new())
        .map(|pm| pm.with_cap(settings.exact_ball_cap))
        .and_then(|pm| exact::expectation(&pm, args.vertex))
        .ok();
    let mut warnings: Vec<String> = temperature_warning(&input.model).into_iter().collect();
    warnings.push(format!(
        "the estimate is within epsilon + tolerance of E[X_v] only if the solver is epsilon-optimal on every probe (tolerance = {tolerance})"
    ));
    let report = RunReport {
        command: "estimate-marginal",
        inputs: Inputs::for_file(
            &args.model,
            &input.bytes,
            MarginalSettings {
                vertex: args.vertex,
                tolerance,
                solver: args.solver,
                settings: &settings,
            },
        ),
        result: MarginalResult {
            probability_plus: estimate.probability(),
            estimate,
            exact,
        },
        wall_time: elapsed(start, args.common.timing),
        warnings,
    };
    emit_json(&report, args.common.out.as_ref())
}

fn cmd_gen(args: GenArgs) -> Result<()> {
    let model = random_instance(
        args.n,
        args.max_degree,
        (-args.beta, args.beta),
        (-args.field, args.field),
        args.seed,
    )?;
    let weights = match args.weights {
        WeightMode::Ones => WeightVector::uniform(args.n, 1.0),
        WeightMode::Random => random_weights(args.n, (-1.0, 1.0), args.seed ^ 0x5eed_0000_0000_0000)?,
    };
    emit(&write_model(&model, &weights)?, args.out.as_ref())
}
