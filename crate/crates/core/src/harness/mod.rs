//! JSON-configured experiments and their reports.

pub mod config;
pub mod lemmas;
pub mod report;
pub mod run;

pub use config::{ExperimentConfig, ExperimentKind, RunMode, StrategyConfig, StrategyDescriptor, Tolerances, VerifierConfig};
pub use lemmas::{run_lemma, run_lemma_suite, Lemma, LemmaMargin};
pub use report::{emit_report, write_report, ExperimentReport, ReportFormat, TrialRecord, Validation};
pub use run::{binomial_bound, run_experiment, run_experiment_timed, run_trials};
