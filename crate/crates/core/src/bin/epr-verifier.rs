use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use epr_verifier::harness::{emit_report, run_experiment_timed, ExperimentConfig, ExperimentKind, ReportFormat, RunMode};
use epr_verifier::Error;

#[derive(Parser)]
#[command(version, about = "Run verifier experiments from JSON configs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Config file; the canonical config for the subcommand when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, env = "EPR_VERIFIER_SEED")]
    seed: Option<u64>,
    #[arg(long, global = true)]
    mode: Option<Mode>,
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Defaults to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value = "json")]
    format: Format,
    /// Record wall time in the report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    Completeness,
    Soundness,
    Lemmas,
    SwapBench,
}

#[derive(ValueEnum, Clone, Copy)]
enum Mode {
    Exact,
    Sampled,
}

#[derive(ValueEnum, Clone, Copy)]
enum Format {
    Json,
    Csv,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Config(_) | Error::Io { .. } | Error::Json(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: &Cli) -> epr_verifier::Result<bool> {
    let kind = match cli.command {
        Command::Completeness => ExperimentKind::Completeness,
        Command::Soundness => ExperimentKind::Soundness,
        Command::Lemmas => ExperimentKind::Lemmas,
        Command::SwapBench => ExperimentKind::SwapBench,
    };
    let mut config = match &cli.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::canonical(kind),
    };
    if config.experiment != kind {
        return Err(Error::Config(format!("config is for `{}`, subcommand is `{}`", config.experiment.name(), kind.name())));
    }
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(mode) = cli.mode {
        config.mode = match mode {
            Mode::Exact => RunMode::Exact,
            Mode::Sampled => RunMode::Sampled,
        };
    }
    if let Some(trials) = cli.trials {
        config.trials = trials;
    }
    let report = run_experiment_timed(&config, cli.timing)?;
    let format = match cli.format {
        Format::Json => ReportFormat::Json,
        Format::Csv => ReportFormat::Csv,
    };
    match &cli.out {
        Some(path) => epr_verifier::harness::write_report(&report, format, path)?,
        None => std::io::stdout()
            .write_all(&emit_report(&report, format)?)
            .map_err(|source| Error::Io { path: "<stdout>".into(), source })?,
    }
    if !report.validation.passed {
        for f in &report.validation.failures {
            eprintln!("validation failure: {f}");
        }
    }
    Ok(report.validation.passed)
}
