mod emit;
mod inputs;
mod report;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hyperramsey::Error;

#[derive(Parser, Debug)]
#[command(name = "hyperramsey", version, about = "Hypergraph Ramsey experiments: generators, pipelines, verifiers and bounds")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Global {
    /// Master seed; every random choice in a run derives from it.
    #[arg(long, global = true, env = "HYPERRAMSEY_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Node cap for searches (embedding, copy search, oracle).
    #[arg(long, global = true, env = "HYPERRAMSEY_BUDGET_NODES")]
    pub budget_nodes: Option<u64>,
    /// Wall-clock cap in milliseconds for oracle searches. Runs that hit it
    /// are not reproducible.
    #[arg(long, global = true, env = "HYPERRAMSEY_BUDGET_MS")]
    pub budget_ms: Option<u64>,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "HYPERRAMSEY_THREADS")]
    #[serde(skip)]
    pub threads: Option<usize>,
    #[arg(long, global = true, env = "HYPERRAMSEY_FORMAT", value_enum, default_value_t = Format::Json)]
    #[serde(skip)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true, env = "HYPERRAMSEY_OUT")]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate hypergraphs, hosts, colourings and base colourings.
    #[command(subcommand)]
    Gen(run::GenCommand),
    /// Run a pipeline or verifier and emit its report.
    #[command(subcommand)]
    Run(run::RunCommand),
    /// Render earlier reports as tables.
    #[command(subcommand)]
    Report(report::ReportCommand),
}

/// Why a command stopped without a report of its own.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments or malformed input.
    Usage(String),
    Io(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
            // a search or construction that ran out of room is a failed verdict
            Failure::Core(Error::BudgetExceeded { .. } | Error::RetriesExhausted { .. } | Error::DigitCap { .. }) => 1,
            Failure::Core(_) => 2,
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Io(m) => m.clone(),
            Failure::Core(e) => e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(t) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let code = match cli.command {
        Command::Gen(c) => run::gen(&cli.global, c),
        Command::Run(c) => run::run(&cli.global, c),
        Command::Report(c) => report::report(&cli.global, c),
    };
    ExitCode::from(code)
}
