use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use super::lemmas::LemmaMargin;
use crate::error::{Error, Result};
use crate::protocol::{BranchBreakdown, RunOutcome, Verdict};

pub const SOFTWARE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Csv,
}

/// One sampled run as a CSV row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub b: u8,
    pub pair_i: usize,
    pub pair_j: usize,
    /// Bell outcome label, empty when `b = 1`.
    pub postsel: String,
    pub verdict: Verdict,
}

impl TrialRecord {
    pub fn from_outcome(trial: usize, o: &RunOutcome) -> Self {
        Self {
            trial,
            b: o.b,
            pair_i: o.pair.0,
            pair_j: o.pair.1,
            postsel: o.bell.map(|b| b.label().to_string()).unwrap_or_default(),
            verdict: o.verdict,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledSummary {
    pub trials: usize,
    pub accepts: usize,
    pub accept_frequency: f64,
    /// `sigmas · √(p(1−p)/N)` around the exact acceptance probability.
    pub bound: f64,
    pub within_bound: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SwapBenchSummary {
    pub instances: usize,
    pub max_abs_deviation: f64,
    pub identical_pure: f64,
    pub orthogonal_pure: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Validation {
    pub passed: bool,
    pub failures: Vec<String>,
}

impl Validation {
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
        self.passed = self.failures.is_empty();
    }
}

/// Experiment output. `accept_probability`, `reject_probability` and
/// `branches` are exact values in both modes; sampled runs add `sampled`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub software_version: String,
    pub config: ExperimentConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub accept_probability: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reject_probability: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branches: Option<BranchBreakdown>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampled: Option<SampledSummary>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lemma_margins: Vec<LemmaMargin>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub swap_bench: Option<SwapBenchSummary>,
    pub validation: Validation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
    /// Per-trial rows, emitted only in CSV.
    #[serde(skip)]
    pub trials: Vec<TrialRecord>,
}

impl ExperimentReport {
    pub fn new(config: ExperimentConfig) -> Self {
        Self {
            software_version: SOFTWARE_VERSION.to_string(),
            config,
            accept_probability: None,
            reject_probability: None,
            branches: None,
            sampled: None,
            lemma_margins: Vec::new(),
            swap_bench: None,
            validation: Validation { passed: true, failures: Vec::new() },
            wall_time_ms: None,
            trials: Vec::new(),
        }
    }
}

/// JSON: one pretty-printed object. CSV: one row per trial for sampled runs,
/// otherwise `metric,value` rows.
pub fn emit_report(report: &ExperimentReport, format: ReportFormat) -> Result<Vec<u8>> {
    match format {
        ReportFormat::Json => {
            let mut out = serde_json::to_vec_pretty(report)?;
            out.push(b'\n');
            Ok(out)
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            if report.trials.is_empty() {
                w.write_record(["metric", "value"]).map_err(csv_err)?;
                for (k, v) in summary_rows(report) {
                    w.write_record([k, v]).map_err(csv_err)?;
                }
            } else {
                for t in &report.trials {
                    w.serialize(t).map_err(csv_err)?;
                }
            }
            w.into_inner().map_err(|e| Error::Config(format!("csv: {e}")))
        }
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Config(format!("csv: {e}"))
}

fn summary_rows(r: &ExperimentReport) -> Vec<(String, String)> {
    let mut rows = vec![
        ("experiment".to_string(), r.config.experiment.name().to_string()),
        ("software_version".into(), r.software_version.clone()),
    ];
    let mut push = |k: &str, v: Option<f64>| {
        if let Some(v) = v {
            rows.push((k.to_string(), v.to_string()));
        }
    };
    push("accept_probability", r.accept_probability);
    push("reject_probability", r.reject_probability);
    if let Some(b) = &r.branches {
        push("b0_postsel_fail", Some(b.b0_postsel_fail));
        push("b0_all_zero_reject", Some(b.b0_all_zero_reject));
        push("b0_measured_accept", Some(b.b0_measured_accept));
        push("b1_swap_accept", Some(b.b1_swap_accept));
        push("b1_swap_reject", Some(b.b1_swap_reject));
    }
    if let Some(s) = &r.swap_bench {
        push("swap_max_abs_deviation", Some(s.max_abs_deviation));
    }
    for m in &r.lemma_margins {
        rows.push((format!("{}_worst_margin", m.name), m.worst_margin.to_string()));
    }
    rows.push(("validation_passed".into(), r.validation.passed.to_string()));
    rows
}

pub fn write_report(report: &ExperimentReport, format: ReportFormat, path: &Path) -> Result<()> {
    let bytes = emit_report(report, format)?;
    let io = |source| Error::Io { path: path.to_path_buf(), source };
    let mut f = std::fs::File::create(path).map_err(io)?;
    f.write_all(&bytes).map_err(io)
}
