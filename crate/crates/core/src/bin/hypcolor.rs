use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hypcolor::algorithm::{run, RunConfig, RunResult};
use hypcolor::harness::{
    brute_force_bichromatic, experiment_claim_failure_prob, experiment_epoch_shrinkage, experiment_success_rate,
    generate, search_colorings, BruteForce, ExperimentParams, Family, GeneratorSpec, InstanceSource, OutputFormat,
    SearchConfig, SuccessCriteria,
};
use hypcolor::hypergraph::Hypergraph;

#[derive(Parser)]
#[command(name = "hypcolor", version, about = "Distributed hypergraph 2-coloring: runs, experiments, oracles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the algorithm on one instance with one coloring sequence.
    Run(RunArgs),
    /// Run a desk-scale experiment and check it against its tolerance.
    Experiment(ExperimentArgs),
    /// Search for one coloring sequence that succeeds on every instance given.
    SearchColorings(SearchArgs),
    /// Brute-force 2-coloring of a small instance.
    Oracle(OracleArgs),
    /// Generate an instance and emit it as JSON.
    Gen(GenArgs),
}

#[derive(Args)]
struct Schedule {
    #[arg(long, default_value_t = 0.25)]
    alpha: f64,
    #[arg(long, default_value_t = 3)]
    u: usize,
    /// Phases per epoch; defaults to ceil(log2 n).
    #[arg(long)]
    beta: Option<usize>,
    /// Number of epochs; defaults to ceil(log2 n).
    #[arg(long)]
    epochs: Option<usize>,
}

#[derive(Args)]
struct RunArgs {
    /// Run config JSON; explicit flags are ignored when given.
    #[arg(long, conflicts_with_all = ["instance", "colorings"])]
    config: Option<PathBuf>,
    #[arg(long, required_unless_present = "config")]
    instance: Option<PathBuf>,
    /// Coloring sequence JSON; otherwise drawn from --seed.
    #[arg(long)]
    colorings: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    schedule: Schedule,
    /// Write the full result with traces here.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "table")]
    format: OutputFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExperimentName {
    SuccessRate,
    Claim,
    Shrinkage,
}

#[derive(Args)]
struct ExperimentArgs {
    name: ExperimentName,
    /// Fixed instance; otherwise a fresh generated instance per trial.
    #[arg(long)]
    instance: Option<PathBuf>,
    #[arg(long, default_value = "uniform_random")]
    family: Family,
    #[arg(long, default_value_t = 32)]
    n: usize,
    #[arg(long, default_value_t = 12)]
    delta: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[command(flatten)]
    schedule: Schedule,
    /// Phases tracked by the claim experiment.
    #[arg(long, default_value_t = 3)]
    ell: usize,
    /// Largest accepted decay ratio for the claim experiment.
    #[arg(long, default_value_t = 0.9)]
    max_ratio: f64,
    /// Minimum monotone fraction for the shrinkage experiment.
    #[arg(long, default_value_t = 0.95)]
    min_monotone: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "table")]
    format: OutputFormat,
}

#[derive(Args)]
struct SearchArgs {
    /// Universe members; repeat the flag.
    #[arg(long, required = true)]
    instance: Vec<PathBuf>,
    #[arg(long, default_value_t = 0.25)]
    alpha: f64,
    #[arg(long, default_value_t = 3)]
    u: usize,
    #[arg(long, default_value_t = 3)]
    beta: usize,
    #[arg(long, default_value_t = 3)]
    epochs: usize,
    #[arg(long, default_value_t = 100_000)]
    budget: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the coloring sequence here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    instance: PathBuf,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    family: Family,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    delta: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

type Failure = Box<dyn std::error::Error>;

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()).into()),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn run_summary(r: &RunResult, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => r.to_json(),
        OutputFormat::Csv => {
            let mut s =
                String::from("phase,active_at_start,biased,dangerous,max_skeleton,fixed,idled,carried_over,rounds\n");
            for t in &r.traces {
                let fixed = t.fixed_good.len() + t.fixed_blackbox.len() + t.fixed_isolated.len();
                writeln!(
                    s,
                    "{},{},{},{},{},{fixed},{},{},{}",
                    t.phase,
                    t.active_at_start,
                    t.biased.len(),
                    t.dangerous.len(),
                    t.max_skeleton,
                    t.idled.len(),
                    t.carried_over.len(),
                    t.rounds
                )
                .unwrap();
            }
            s
        }
        OutputFormat::Table => {
            let mut s = String::new();
            writeln!(s, "outcome     {}", if r.is_success() { "success" } else { "exhausted" }).unwrap();
            writeln!(s, "phases      {}", r.phases_executed).unwrap();
            writeln!(s, "rounds      {}", r.total_rounds).unwrap();
            writeln!(s, "messages    {}", r.total_messages).unwrap();
            if let Some(c) = r.coloring() {
                writeln!(s, "coloring    {}", c.iter().map(|x| x.symbol()).collect::<String>()).unwrap();
            }
            s
        }
    }
}

fn cmd_run(a: RunArgs) -> Result<bool, Failure> {
    let config = match a.config {
        Some(path) => RunConfig::load(&path)?,
        None => RunConfig {
            instance: a.instance.expect("required by clap"),
            colorings: a.colorings,
            seed: Some(a.seed),
            alpha: a.schedule.alpha,
            u: a.schedule.u,
            beta: a.schedule.beta,
            num_epochs: a.schedule.epochs,
        },
    };
    let (h, params) = config.resolve()?;
    let result = match run(&h, &params) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("run failed: {e}");
            return Ok(false);
        }
    };
    if let Some(path) = &a.out {
        emit(Some(path), &result.to_json())?;
    }
    print!("{}", run_summary(&result, a.format));
    Ok(result.is_success())
}

fn cmd_experiment(a: ExperimentArgs) -> Result<bool, Failure> {
    let source = match &a.instance {
        Some(path) => InstanceSource::Fixed(Hypergraph::load(path)?),
        None => InstanceSource::Generate(GeneratorSpec::new(a.family, a.n, a.delta, 0)),
    };
    let params = ExperimentParams {
        alpha: a.schedule.alpha,
        u: a.schedule.u,
        beta: a.schedule.beta,
        num_epochs: a.schedule.epochs,
        seed: a.seed,
    };
    let report = match a.name {
        ExperimentName::SuccessRate => experiment_success_rate(&source, &params, a.trials, SuccessCriteria::default())?,
        ExperimentName::Claim => experiment_claim_failure_prob(&source, &params, a.trials, a.ell, a.max_ratio)?,
        ExperimentName::Shrinkage => experiment_epoch_shrinkage(&source, &params, a.trials, a.min_monotone)?,
    };
    if let Some(path) = &a.out {
        emit(Some(path), &report.to_json())?;
    }
    print!("{}", report.render(a.format));
    Ok(report.pass)
}

fn cmd_search(a: SearchArgs) -> Result<bool, Failure> {
    let universe = a.instance.iter().map(|p| Hypergraph::load(p)).collect::<Result<Vec<_>, _>>()?;
    let config =
        SearchConfig { alpha: a.alpha, u: a.u, beta: a.beta, num_epochs: a.epochs, budget: a.budget, seed: a.seed };
    match search_colorings(&universe, &config) {
        Ok(found) => {
            eprintln!("found after {} sequences ({:?})", found.examined, found.stage);
            emit(a.out.as_deref(), &found.sequence.to_json())?;
            Ok(true)
        }
        Err(e) => {
            eprintln!("{e}");
            Ok(false)
        }
    }
}

fn cmd_oracle(a: OracleArgs) -> Result<bool, Failure> {
    let h = Hypergraph::load(&a.instance)?;
    match brute_force_bichromatic(&h)? {
        BruteForce::Feasible(c) => {
            println!("feasible {}", c.iter().map(|x| x.symbol()).collect::<String>());
            Ok(true)
        }
        BruteForce::Infeasible => {
            println!("infeasible");
            Ok(false)
        }
    }
}

fn cmd_gen(a: GenArgs) -> Result<bool, Failure> {
    let spec = GeneratorSpec { max_degree: a.max_degree, ..GeneratorSpec::new(a.family, a.n, a.delta, a.seed) };
    emit(a.out.as_deref(), &generate(&spec)?.to_json())?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Experiment(a) => cmd_experiment(a),
        Command::SearchColorings(a) => cmd_search(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Gen(a) => cmd_gen(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
