//! Loading a JSON config, running it, and emitting JSON and CSV reports.

use epr_verifier::harness::{emit_report, run_experiment, ExperimentConfig, ReportFormat, RunMode};
use epr_verifier::Result;

fn main() -> Result<()> {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/soundness.json");
    let mut config = ExperimentConfig::load(&path)?;
    config.mode = RunMode::Sampled;
    config.trials = 5;
    let report = run_experiment(&config)?;
    print!("{}", String::from_utf8_lossy(&emit_report(&report, ReportFormat::Json)?));
    print!("{}", String::from_utf8_lossy(&emit_report(&report, ReportFormat::Csv)?));

    let again = run_experiment(&config)?;
    println!("byte-identical rerun: {}", emit_report(&again, ReportFormat::Json)? == emit_report(&report, ReportFormat::Json)?);
    Ok(())
}
