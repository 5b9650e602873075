//! `ccp`: evaluate conventional and causal classifiers from scored CSV files.
//!
//! Input CSVs have header `score,outcome` (class mode) or
//! `score,outcome,treatment` (causal mode). For retention applications encode
//! a retained customer as outcome 1.
//!
//! Exit codes: 0 success, 1 invalid input or usage, 2 internal consistency
//! failure.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] ccp_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_internal() => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "ccp", version, about = "Evaluate conventional and causal (uplift) classifiers")]
struct Cli {
    /// Omit the wall-clock timestamp so reports are byte-reproducible.
    #[arg(long, global = true)]
    no_timestamp: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Class,
    Causal,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Class => "class",
            Mode::Causal => "causal",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Baseline {
    Perfect,
    Pos,
    Neg,
    Random,
    Absolute,
}

impl From<Baseline> for ccp_core::BaselineKind {
    fn from(b: Baseline) -> Self {
        use ccp_core::BaselineKind as K;
        match b {
            Baseline::Perfect => K::Perfect,
            Baseline::Pos => K::AllPositive,
            Baseline::Neg => K::AllNegative,
            Baseline::Random => K::Random,
            Baseline::Absolute => K::Absolute,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Application {
    Retention,
    Response,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Scored dataset (CSV).
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    mode: Mode,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Metrics and profits at one threshold.
    Eval {
        #[command(flatten)]
        input: InputArgs,
        /// Defaults to 0.5 in class mode and 0 in causal mode.
        #[arg(long)]
        threshold: Option<f64>,
        /// Cost-benefit JSON: `{"cb": ..}` or `{"ob": .., "tc": ..}` / `{"ccb": ..}`.
        #[arg(long)]
        costs: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "absolute")]
        baseline: Baseline,
    },
    /// Write curve CSVs (`kind,threshold,x,y`) into a directory.
    Curves {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated: roc,gains,lift (class) or qini,liftup,croc (causal).
        /// Defaults to all curves of the mode.
        #[arg(long, value_delimiter = ',')]
        which: Vec<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Profit-maximizing threshold and the full profit table.
    Optimize {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        costs: PathBuf,
        #[arg(long, value_enum, default_value = "absolute")]
        baseline: Baseline,
    },
    /// Expected maximum profit under uncertain cost-benefit parameters.
    Emp {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        costs_dist: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        draws: u64,
        #[arg(long, env = "CCP_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "absolute")]
        baseline: Baseline,
    },
    /// Retention or response campaign profit on causal data.
    App {
        #[arg(value_enum)]
        application: Application,
        #[arg(long)]
        input: PathBuf,
        /// `{"retention": {..}}` or `{"response": {..}}`.
        #[arg(long)]
        params: PathBuf,
        /// Defaults to 0.
        #[arg(long)]
        threshold: Option<f64>,
        /// Also report the profit-maximizing threshold.
        #[arg(long)]
        optimize: bool,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let report = match cli.command {
        Command::Eval { input, threshold, costs, baseline } => {
            commands::eval(&input, threshold, costs.as_deref(), baseline.into())?
        }
        Command::Curves { input, which, out } => {
            commands::curves(&input, &which, &out)?
        }
        Command::Optimize { input, costs, baseline } => {
            commands::optimize(&input, &costs, baseline.into())?
        }
        Command::Emp { input, costs_dist, draws, seed, baseline } => {
            commands::emp(&input, &costs_dist, draws, seed, baseline.into())?
        }
        Command::App { application, input, params, threshold, optimize } => {
            commands::app(application, &input, &params, threshold, optimize)?
        }
    };
    let json = report.into_json(!cli.no_timestamp);
    println!("{}", serde_json::to_string_pretty(&json).expect("report serializes"));
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
