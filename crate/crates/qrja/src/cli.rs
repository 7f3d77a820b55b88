//! Command-line front end: argument definitions, command implementations,
//! and the exit-code contract.
//!
//! Exit codes: 0 success, 1 I/O or input error, 2 solver did not converge,
//! 3 unsupported exponent, 4 unknown method. Every command is deterministic
//! given its inputs and `--seed`; re-runs produce byte-identical outputs.
//! Each run writes a `result.json` embedding the full run configuration and
//! the tool version.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::harness::{
    self, parse_method, read_contest_csv_path, run_evaluation,
    synth_series, AggregateWeighting, EvalOptions, EvalReport, EvalSubsample, HarnessError,
    SynthParams,
};
use crate::hardness::{build_reduction, parse_graph, verify_reduction, HardnessError};
use crate::instance::{
    read_judgments_csv_path, write_judgments_csv_path, write_ratings_csv_path, LossSpec,
};
use crate::solvers::{solve, SolveOptions, SolverError};
use crate::subsample::{subsample_with_mode, SubsampleOptions, WeightsMode};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

const EXIT_CODES_HELP: &str = "Exit codes:
  0  success
  1  I/O or input error
  2  solver did not converge (outputs still written)
  3  unsupported exponent (p < 1 has no efficient solver)
  4  unknown method name";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    UnsupportedExponent(String),
    #[error("{0}")]
    UnknownMethod(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Input(_) => 1,
            CliError::UnsupportedExponent(_) => 3,
            CliError::UnknownMethod(_) => 4,
        }
    }
}

impl From<HarnessError> for CliError {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::UnknownMethod { .. } => CliError::UnknownMethod(e.to_string()),
            HarnessError::Solver(SolverError::UnsupportedExponent(_)) => {
                CliError::UnsupportedExponent(e.to_string())
            }
            HarnessError::Io(_) | HarnessError::Csv(_) => CliError::Io(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<HardnessError> for CliError {
    fn from(e: HardnessError) -> Self {
        match e {
            HardnessError::InvalidExponent(_) => CliError::UnsupportedExponent(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "qrja",
    version,
    about = "Aggregate weighted relative judgments into ratings and predict contest results",
    after_help = EXIT_CODES_HELP
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SampleModeArg {
    Uniform,
    Lewis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WeightingArg {
    Pair,
    Contest,
}

#[derive(Args, Debug, Clone)]
pub struct AggregateArgs {
    /// Judgment CSV with header a,b,y,w
    pub input: PathBuf,
    /// Loss exponent: 1 uses the circulation solver, 2 the Laplacian solver,
    /// other p > 1 iteratively reweighted least squares
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub tolerance: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output directory for ratings.csv and result.json
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Args, Debug, Clone)]
pub struct EvaluateArgs {
    /// Contest CSV with header contest,contestant,score
    pub input: PathBuf,
    /// Comma-separated method names (see `self-test --help` output for the registry)
    #[arg(long, value_delimiter = ',', required = true)]
    pub methods: Vec<String>,
    #[arg(long, default_value_t = 1e-8)]
    pub tolerance: f64,
    /// Subsample rate alpha: when given, the per-contest judgment pool is
    /// resampled to M = floor(alpha*m) weighted draws (alpha = 1.0 still
    /// resamples)
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, value_enum, default_value_t = SampleModeArg::Uniform)]
    pub sample_mode: SampleModeArg,
    /// Exponent for Lewis sampling weights
    #[arg(long, default_value_t = 1.0)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = WeightingArg::Pair)]
    pub aggregate_weighting: WeightingArg,
    /// Learning rate for the matrix-factorization baselines
    #[arg(long, default_value_t = 0.01)]
    pub mf_learning_rate: f64,
    /// Training epochs for the matrix-factorization baselines
    #[arg(long, default_value_t = 1000)]
    pub mf_epochs: usize,
}

#[derive(Args, Debug, Clone)]
pub struct SubsampleArgs {
    /// Judgment CSV with header a,b,y,w
    pub input: PathBuf,
    /// Subsample rate alpha; the output has M = floor(alpha*m) judgments
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, value_enum, default_value_t = SampleModeArg::Uniform)]
    pub sample_mode: SampleModeArg,
    /// Exponent for Lewis sampling weights
    #[arg(long, default_value_t = 1.0)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Args, Debug, Clone)]
pub struct ReduceMaxcutArgs {
    /// Graph as edge-list text: first line n, one "u v" pair per line
    pub input: PathBuf,
    /// Loss exponent, must satisfy 0 < p < 1
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Args, Debug, Clone)]
pub struct SynthArgs {
    #[arg(long, default_value_t = 10)]
    pub contestants: usize,
    #[arg(long, default_value_t = 20)]
    pub contests: usize,
    /// Bernoulli participation rate in (0, 1]
    #[arg(long, default_value_t = 0.8)]
    pub rate: f64,
    #[arg(long, default_value_t = 1.0)]
    pub ability_sd: f64,
    #[arg(long, default_value_t = 1.0)]
    pub difficulty_sd: f64,
    #[arg(long, default_value_t = 0.1)]
    pub noise_sd: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve one judgment file for ratings
    Aggregate(AggregateArgs),
    /// Chronological train/predict evaluation of methods on a contest series
    Evaluate(EvaluateArgs),
    /// Resample a judgment file by importance subsampling
    Subsample(SubsampleArgs),
    /// Build the Max-Cut reduction instance for an exponent p < 1
    ReduceMaxcut(ReduceMaxcutArgs),
    /// Generate a synthetic contest series with additive latent structure
    Synth(SynthArgs),
    /// Run built-in consistency checks
    SelfTest,
}

/// Run configuration echoed verbatim into every result.json.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub inputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub methods: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample_mode: Option<String>,
    pub seed: u64,
    pub out_dir: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aggregate_weighting: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub synth: Option<SynthEcho>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SynthEcho {
    pub contestants: usize,
    pub contests: usize,
    pub rate: f64,
    pub ability_sd: f64,
    pub difficulty_sd: f64,
    pub noise_sd: f64,
}

#[derive(Serialize)]
struct ResultEnvelope<'a, T: Serialize> {
    config: &'a RunConfig,
    version: &'a str,
    #[serde(flatten)]
    payload: T,
}

fn ensure_out_dir(path: &Path) -> Result<(), CliError> {
    fs::create_dir_all(path).map_err(|e| CliError::Io(format!("cannot create {path:?}: {e}")))
}

fn write_json<T: Serialize>(path: &Path, config: &RunConfig, payload: T) -> Result<(), CliError> {
    let envelope = ResultEnvelope { config, version: VERSION, payload };
    let mut text = serde_json::to_string_pretty(&envelope)
        .map_err(|e| CliError::Io(format!("serialization failed: {e}")))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {path:?}: {e}")))
}

fn sample_mode_name(mode: SampleModeArg) -> &'static str {
    match mode {
        SampleModeArg::Uniform => "uniform",
        SampleModeArg::Lewis => "lewis",
    }
}

fn weighting_name(w: WeightingArg) -> &'static str {
    match w {
        WeightingArg::Pair => "pair",
        WeightingArg::Contest => "contest",
    }
}

pub fn cmd_aggregate(args: &AggregateArgs) -> Result<i32, CliError> {
    if args.p < 1.0 {
        return Err(CliError::UnsupportedExponent(format!(
            "p = {} is below 1: minimizing that objective is NP-hard (it encodes Max-Cut); use p >= 1",
            args.p
        )));
    }
    let instance = read_judgments_csv_path(&args.input)
        .map_err(|e| CliError::Input(format!("{}: {e}", args.input.display())))?;
    let spec = LossSpec::new(args.p).map_err(|e| CliError::Input(e.to_string()))?;
    let opts = SolveOptions { tolerance: args.tolerance, seed: args.seed, ..SolveOptions::default() };
    let result = solve(&instance, &spec, &opts).map_err(|e| match e {
        SolverError::UnsupportedExponent(_) => CliError::UnsupportedExponent(e.to_string()),
        other => CliError::Input(other.to_string()),
    })?;

    let config = RunConfig {
        command: "aggregate".into(),
        inputs: vec![args.input.display().to_string()],
        methods: None,
        p: Some(args.p),
        tolerance: Some(args.tolerance),
        alpha: None,
        sample_mode: None,
        seed: args.seed,
        out_dir: args.out.display().to_string(),
        aggregate_weighting: None,
        synth: None,
    };
    ensure_out_dir(&args.out)?;
    write_ratings_csv_path(&result.x, args.out.join("ratings.csv"))
        .map_err(|e| CliError::Io(e.to_string()))?;
    #[derive(Serialize)]
    struct Payload<'a> {
        result: &'a crate::solvers::SolveResult,
    }
    write_json(&args.out.join("result.json"), &config, Payload { result: &result })?;
    Ok(if result.converged { 0 } else { 2 })
}

pub fn cmd_evaluate(args: &EvaluateArgs) -> Result<i32, CliError> {
    let methods = args
        .methods
        .iter()
        .map(|name| parse_method(name))
        .collect::<Result<Vec<_>, _>>()?;
    let series = read_contest_csv_path(&args.input)
        .map_err(CliError::from)
        .map_err(|e| match e {
            CliError::Io(m) => CliError::Io(format!("{}: {m}", args.input.display())),
            other => other,
        })?;
    let subsample = args.alpha.map(|alpha| EvalSubsample {
        alpha,
        mode: match args.sample_mode {
            SampleModeArg::Uniform => WeightsMode::Uniform,
            SampleModeArg::Lewis => WeightsMode::Lewis { p: args.p },
        },
        lewis_iterations: 20,
    });
    let opts = EvalOptions {
        solve: SolveOptions { tolerance: args.tolerance, seed: args.seed, ..SolveOptions::default() },
        subsample,
        weighting: match args.aggregate_weighting {
            WeightingArg::Pair => AggregateWeighting::Pair,
            WeightingArg::Contest => AggregateWeighting::Contest,
        },
        seed: args.seed,
        mf_learning_rate: args.mf_learning_rate,
        mf_epochs: args.mf_epochs,
        ..EvalOptions::default()
    };
    let reports = run_evaluation(&series, &methods, &opts)?;

    let config = RunConfig {
        command: "evaluate".into(),
        inputs: vec![args.input.display().to_string()],
        methods: Some(args.methods.clone()),
        p: Some(args.p),
        tolerance: Some(args.tolerance),
        alpha: args.alpha,
        sample_mode: Some(sample_mode_name(args.sample_mode).into()),
        seed: args.seed,
        out_dir: args.out.display().to_string(),
        aggregate_weighting: Some(weighting_name(args.aggregate_weighting).into()),
        synth: None,
    };
    ensure_out_dir(&args.out)?;
    for report in &reports {
        let file = format!("report_{}.json", report.method.replace(':', "_"));
        #[derive(Serialize)]
        struct Payload<'a> {
            report: &'a EvalReport,
        }
        write_json(&args.out.join(file), &config, Payload { report })?;
    }
    write_metrics_csv(&args.out.join("metrics.csv"), &reports)?;
    #[derive(Serialize)]
    struct Summary<'a> {
        reports: Vec<SummaryRow<'a>>,
    }
    #[derive(Serialize)]
    struct SummaryRow<'a> {
        method: &'a str,
        aggregate: &'a harness::EvalAggregate,
    }
    let summary = Summary {
        reports: reports
            .iter()
            .map(|r| SummaryRow { method: &r.method, aggregate: &r.aggregate })
            .collect(),
    };
    write_json(&args.out.join("result.json"), &config, summary)?;
    Ok(0)
}

fn write_metrics_csv(path: &Path, reports: &[EvalReport]) -> Result<(), CliError> {
    let mut wtr = csv::Writer::from_path(path).map_err(|e| CliError::Io(e.to_string()))?;
    wtr.write_record(["method", "contest", "metric", "value"])
        .map_err(|e| CliError::Io(e.to_string()))?;
    let mut write = |method: &str, contest: &str, metric: &str, value: String| {
        wtr.write_record([method, contest, metric, &value])
            .map_err(|e| CliError::Io(e.to_string()))
    };
    for report in reports {
        for rec in &report.contests {
            if let Some(v) = rec.ordinal_accuracy {
                write(&report.method, &rec.contest, "ordinal_accuracy", v.to_string())?;
            }
            if let Some(v) = rec.quantitative_loss_l1 {
                write(&report.method, &rec.contest, "quantitative_loss_l1", v.to_string())?;
            }
            if let Some(v) = rec.quantitative_loss_l2 {
                write(&report.method, &rec.contest, "quantitative_loss_l2", v.to_string())?;
            }
            write(&report.method, &rec.contest, "pair_count", rec.pair_count.to_string())?;
            write(&report.method, &rec.contest, "ordinal_pairs", rec.ordinal_pairs.to_string())?;
        }
    }
    wtr.flush().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(())
}

pub fn cmd_subsample(args: &SubsampleArgs) -> Result<i32, CliError> {
    let instance = read_judgments_csv_path(&args.input)
        .map_err(|e| CliError::Input(format!("{}: {e}", args.input.display())))?;
    let m = instance.judgment_count();
    let count = (args.alpha * m as f64).floor() as usize;
    if count == 0 {
        return Err(CliError::Input(format!(
            "alpha = {} with {m} judgments gives an empty subsample",
            args.alpha
        )));
    }
    let mode = match args.sample_mode {
        SampleModeArg::Uniform => WeightsMode::Uniform,
        SampleModeArg::Lewis => WeightsMode::Lewis { p: args.p },
    };
    let opts = SubsampleOptions { count, mode, lewis_iterations: 20, seed: args.seed };
    let (out_instance, lewis) =
        subsample_with_mode(&instance, &opts).map_err(|e| CliError::Input(e.to_string()))?;

    let config = RunConfig {
        command: "subsample".into(),
        inputs: vec![args.input.display().to_string()],
        methods: None,
        p: Some(args.p),
        tolerance: None,
        alpha: Some(args.alpha),
        sample_mode: Some(sample_mode_name(args.sample_mode).into()),
        seed: args.seed,
        out_dir: args.out.display().to_string(),
        aggregate_weighting: None,
        synth: None,
    };
    ensure_out_dir(&args.out)?;
    write_judgments_csv_path(&out_instance, args.out.join("judgments.csv"))
        .map_err(|e| CliError::Io(e.to_string()))?;
    #[derive(Serialize)]
    struct Payload {
        input_judgments: usize,
        output_judgments: usize,
        lewis_regularized: Option<bool>,
    }
    write_json(
        &args.out.join("result.json"),
        &config,
        Payload {
            input_judgments: m,
            output_judgments: count,
            lewis_regularized: lewis.map(|l| l.regularized),
        },
    )?;
    Ok(0)
}

pub fn cmd_reduce_maxcut(args: &ReduceMaxcutArgs) -> Result<i32, CliError> {
    if args.p >= 1.0 {
        return Err(CliError::UnsupportedExponent(format!(
            "the reduction needs 0 < p < 1, got {}",
            args.p
        )));
    }
    let text = fs::read_to_string(&args.input)
        .map_err(|e| CliError::Io(format!("{}: {e}", args.input.display())))?;
    let graph = parse_graph(&text)?;
    let reduction = build_reduction(&graph, args.p)?;

    let config = RunConfig {
        command: "reduce-maxcut".into(),
        inputs: vec![args.input.display().to_string()],
        methods: None,
        p: Some(args.p),
        tolerance: None,
        alpha: None,
        sample_mode: None,
        seed: 0,
        out_dir: args.out.display().to_string(),
        aggregate_weighting: None,
        synth: None,
    };
    ensure_out_dir(&args.out)?;
    write_judgments_csv_path(&reduction.instance, args.out.join("judgments.csv"))
        .map_err(|e| CliError::Io(e.to_string()))?;

    let verification = if graph.vertex_count() <= 6 {
        let report = verify_reduction(&graph, &reduction)?;
        println!(
            "verification: maxcut k* = {}, min integral loss = {:.9}, expected = {:.9} -> {}",
            report.maxcut,
            report.min_integral_loss,
            report.expected_loss,
            if report.identity_holds { "PASS" } else { "FAIL" }
        );
        Some(report)
    } else {
        println!(
            "verification skipped: graph has {} vertices (limit 6 for exhaustive check)",
            graph.vertex_count()
        );
        None
    };
    #[derive(Serialize)]
    struct Payload<'a> {
        vertices: usize,
        edges: usize,
        w1: f64,
        w2: f64,
        judgments: usize,
        verification: &'a Option<crate::hardness::VerificationReport>,
    }
    write_json(
        &args.out.join("result.json"),
        &config,
        Payload {
            vertices: graph.vertex_count(),
            edges: graph.edge_count(),
            w1: reduction.w1,
            w2: reduction.w2,
            judgments: reduction.instance.judgment_count(),
            verification: &verification,
        },
    )?;
    if let Some(v) = verification {
        if !v.identity_holds {
            return Err(CliError::Input("reduction identity check failed".into()));
        }
    }
    Ok(0)
}

pub fn cmd_synth(args: &SynthArgs) -> Result<i32, CliError> {
    let params = SynthParams {
        n_contestants: args.contestants,
        n_contests: args.contests,
        participation_rate: args.rate,
        ability_sd: args.ability_sd,
        difficulty_sd: args.difficulty_sd,
        noise_sd: args.noise_sd,
        seed: args.seed,
    };
    let series = synth_series(&params).map_err(|e| CliError::Input(e.to_string()))?;
    let config = RunConfig {
        command: "synth".into(),
        inputs: vec![],
        methods: None,
        p: None,
        tolerance: None,
        alpha: None,
        sample_mode: None,
        seed: args.seed,
        out_dir: args.out.display().to_string(),
        aggregate_weighting: None,
        synth: Some(SynthEcho {
            contestants: args.contestants,
            contests: args.contests,
            rate: args.rate,
            ability_sd: args.ability_sd,
            difficulty_sd: args.difficulty_sd,
            noise_sd: args.noise_sd,
        }),
    };
    ensure_out_dir(&args.out)?;
    harness::write_contest_csv_path(&series, args.out.join("contests.csv"))
        .map_err(|e| CliError::Io(e.to_string()))?;
    #[derive(Serialize)]
    struct Payload {
        contests: usize,
        entries: usize,
    }
    let entries = series.contests().iter().map(|c| c.entries.len()).sum();
    write_json(&args.out.join("result.json"), &config, Payload { contests: series.len(), entries })?;
    Ok(0)
}

pub fn cmd_self_test() -> i32 {
    use crate::instance::QrjaInstance;
    let mut all_ok = true;
    let mut check = |name: &str, ok: bool| {
        println!("self-test: {name} ... {}", if ok { "PASS" } else { "FAIL" });
        all_ok &= ok;
    };

    let opts = SolveOptions::default();
    let triangle =
        QrjaInstance::with_unit_weights(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 3.0)]).unwrap();

    match crate::solvers::solve_l1(&triangle, &opts) {
        Ok(r) => {
            check("l1 triangle loss 1", (r.loss - 1.0).abs() < 1e-9);
            let gap = r.loss - r.dual_objective.unwrap_or(f64::NEG_INFINITY);
            check("l1 duality gap in [0, 1e-6]", (-1e-12..=1e-6).contains(&gap));
        }
        Err(_) => check("l1 triangle loss 1", false),
    }
    let l2 = crate::solvers::solve_l2(&triangle, &opts);
    check("l2 triangle loss 1/3", (l2.loss - 1.0 / 3.0).abs() < 1e-8);
    match crate::solvers::solve_irls(&triangle, &LossSpec::l2(), &opts) {
        Ok(r) => check("irls p=2 matches l2", (r.loss - l2.loss).abs() < 1e-9),
        Err(_) => check("irls p=2 matches l2", false),
    }

    let pair = QrjaInstance::from_tuples(2, &[(0, 1, 3.0, 1.0), (0, 1, 5.0, 1.0)]).unwrap();
    match crate::solvers::solve_l1(&pair, &opts) {
        Ok(r) => check("l1 median pair loss 2", (r.loss - 2.0).abs() < 1e-9),
        Err(_) => check("l1 median pair loss 2", false),
    }
    let r = crate::solvers::solve_l2(&pair, &opts);
    check("l2 mean pair loss 2", (r.loss - 2.0).abs() < 1e-8);

    let pts = crate::baselines::borda_contest_points(&[
        ("a".into(), 3.0),
        ("b".into(), 2.0),
        ("c".into(), 1.0),
    ]);
    check("borda points (1, 0, -1)", pts.iter().map(|(_, p)| *p).eq([1.0, 0.0, -1.0]));

    let k3 = crate::hardness::MaxCutGraph::complete(3);
    let ok = build_reduction(&k3, 0.5)
        .and_then(|red| verify_reduction(&k3, &red))
        .map(|rep| rep.identity_holds && rep.maxcut == 2)
        .unwrap_or(false);
    check("maxcut reduction identity on K3", ok);

    let mut inequality_ok = true;
    for pi in 1..=10 {
        for di in 1..=10 {
            let p = pi as f64 / 11.0;
            let d = di as f64 / 20.0;
            inequality_ok &= crate::hardness::check_relaxation_inequality(p, d).unwrap_or(false);
        }
    }
    check("relaxation inequality on grid", inequality_ok);

    let inst = QrjaInstance::with_unit_weights(3, &[(0, 1, 1.0), (1, 2, 2.0)]).unwrap();
    let s1 = crate::subsample::subsample(&inst, &[1.0, 1.0], 8, 9).unwrap();
    let s2 = crate::subsample::subsample(&inst, &[1.0, 1.0], 8, 9).unwrap();
    check("subsample determinism", s1 == s2);

    if all_ok {
        0
    } else {
        1
    }
}

/// Dispatches a parsed command; returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let outcome = match &cli.command {
        Command::Aggregate(args) => cmd_aggregate(args),
        Command::Evaluate(args) => cmd_evaluate(args),
        Command::Subsample(args) => cmd_subsample(args),
        Command::ReduceMaxcut(args) => cmd_reduce_maxcut(args),
        Command::Synth(args) => cmd_synth(args),
        Command::SelfTest => return cmd_self_test(),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
