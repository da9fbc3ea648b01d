use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use erkit::commands::{execute, Command, ExitStatus, RunConfig, DEFAULT_ITERATIONS, DEFAULT_SEED};
use erkit::er::Algorithm;
use erkit::hierarchy::GeneralReliability;
use erkit::io::OutputFormat;

/// Evidential reasoning over hierarchical attribute models.
#[derive(Parser)]
#[command(name = "erkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Aggregate a model and rank its alternatives.
    Evaluate {
        model: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run OER, MER and E2R on a model and compare the results.
    Compare {
        model: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Check the synthesis axioms on seeded random instances.
    CheckAxioms {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_ITERATIONS as u64,
              value_parser = clap::value_parser!(u64).range(1..))]
        iterations: u64,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value_t = Algo::E2r)]
    algo: Algo,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Record every step of each recursive aggregation.
    #[arg(long)]
    trace: bool,
    /// Reject unknown keys and inconsistent reliabilities; warnings become errors.
    #[arg(long)]
    strict: bool,
    /// Do not discount general attributes by their reliability.
    #[arg(long)]
    leaf_reliability_only: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Oer,
    Mer,
    E2r,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

fn config(command: Command, common: Common) -> RunConfig {
    let mut c = RunConfig::new(command);
    c.algorithm = match common.algo {
        Algo::Oer => Some(Algorithm::Oer),
        Algo::Mer => Some(Algorithm::Mer),
        Algo::E2r => Some(Algorithm::E2r),
        Algo::All => None,
    };
    c.format = match common.format {
        Format::Table => OutputFormat::Table,
        Format::Json => OutputFormat::Json,
        Format::Csv => OutputFormat::Csv,
    };
    c.trace = common.trace;
    c.strict = common.strict;
    if common.leaf_reliability_only {
        c.general_reliability = GeneralReliability::Ignore;
    }
    c.out = common.out;
    c
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(ExitStatus::Usage.code())
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let config = match cli.command {
        Sub::Evaluate { model, common } => config(Command::Evaluate { model }, common),
        Sub::Compare { model, common } => config(Command::Compare { model }, common),
        Sub::CheckAxioms { common, seed, iterations } => {
            let mut c = config(Command::CheckAxioms, common);
            c.seed = seed;
            c.iterations = iterations as usize;
            c
        }
    };
    let outcome = execute(&config);
    if let Err(e) = emit(&outcome.stdout, &outcome.stderr) {
        eprintln!("erkit: {e:#}");
        return ExitCode::from(ExitStatus::Io.code());
    }
    ExitCode::from(outcome.status.code())
}

fn emit(stdout: &str, stderr: &str) -> anyhow::Result<()> {
    std::io::stderr().write_all(stderr.as_bytes()).context("writing diagnostics")?;
    let mut out = std::io::stdout().lock();
    out.write_all(stdout.as_bytes()).context("writing report")?;
    out.flush().context("writing report")
}
