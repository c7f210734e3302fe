use std::time::Instant;

use rayon::prelude::*;

use super::config::{ExperimentConfig, ExperimentKind, RunMode, StrategyConfig};
use super::lemmas::run_lemma_suite;
use super::report::{ExperimentReport, SampledSummary, SwapBenchSummary, TrialRecord};
use crate::error::{Error, Result};
use crate::kernel::{RegisterLayout, TrialRng};
use crate::linalg::{ComplexMatrix, ONE, ZERO};
use crate::protocol::{cheating_proof, swap_accept_probability, swap_formula, ExactResult, RunOutcome, SampledVerifier, Verdict};
use crate::random;

/// Runs `trials` sampled executions; trial `t` uses stream `(seed, t)`.
pub fn run_trials(cache: &SampledVerifier, seed: u64, trials: usize) -> Vec<RunOutcome> {
    (0..trials).into_par_iter().map(|t| cache.run(&mut TrialRng::new(seed, t as u64))).collect()
}

/// `sigmas · √(p(1−p)/N)`
pub fn binomial_bound(p: f64, n: usize, sigmas: f64) -> f64 {
    sigmas * (p * (1.0 - p) / n as f64).max(0.0).sqrt()
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    run_experiment_timed(config, false)
}

/// Same as [`run_experiment`]; `timing` fills `wall_time_ms`, which makes the
/// report bytes run-dependent.
pub fn run_experiment_timed(config: &ExperimentConfig, timing: bool) -> Result<ExperimentReport> {
    config.validate()?;
    let start = Instant::now();
    let mut report = ExperimentReport::new(config.clone());
    match config.experiment {
        ExperimentKind::Completeness | ExperimentKind::Soundness => protocol_experiment(config, &mut report)?,
        ExperimentKind::Lemmas => {
            let tol = config.tolerances.margin;
            report.lemma_margins = run_lemma_suite(config.samples, config.seed, tol)?;
            for m in report.lemma_margins.clone() {
                report.validation.check(m.violations == 0, || {
                    format!("{}: {} violations, worst margin {:.3e}", m.name, m.violations, m.worst_margin)
                });
            }
        }
        ExperimentKind::SwapBench => swap_bench(config, &mut report)?,
    }
    if timing {
        report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

fn protocol_experiment(config: &ExperimentConfig, report: &mut ExperimentReport) -> Result<()> {
    let completeness = config.experiment == ExperimentKind::Completeness;
    if completeness && config.strategy.kind != StrategyConfig::Honest {
        return Err(Error::Config("completeness runs use the honest strategy".into()));
    }
    let verifier = config.verifier.build().map_err(|e| Error::Config(e.to_string()))?;
    let strategy = config.strategy.build(&verifier, config.l)?;
    let proof = cheating_proof(&strategy, &verifier, config.l).map_err(|e| match e {
        Error::MarginalViolation(_) => e,
        other => Error::Config(other.to_string()),
    })?;
    let cache = SampledVerifier::new(&proof, &verifier)?;
    let exact: ExactResult = cache.exact();
    let tol = config.tolerances.probability;

    report.accept_probability = Some(exact.accept_probability);
    report.reject_probability = Some(exact.reject_probability);
    report.branches = Some(exact.branches);
    report
        .validation
        .check((exact.branches.total() - 1.0).abs() <= tol, || format!("branch masses sum to {}", exact.branches.total()));
    if completeness {
        report.validation.check((exact.accept_probability - 1.0).abs() <= tol, || {
            format!("honest acceptance {} differs from 1", exact.accept_probability)
        });
    } else {
        report.validation.check(exact.reject_probability > 0.0, || "reject probability is not positive".into());
    }

    if config.mode == RunMode::Sampled {
        let outcomes = run_trials(&cache, config.seed, config.trials);
        let accepts = outcomes.iter().filter(|o| o.verdict == Verdict::Accept).count();
        let freq = accepts as f64 / config.trials as f64;
        let bound = binomial_bound(exact.accept_probability, config.trials, config.tolerances.sigmas);
        let within = (freq - exact.accept_probability).abs() <= bound + tol;
        report
            .validation
            .check(within, || format!("sampled frequency {freq} outside {bound:.3e} of {}", exact.accept_probability));
        report.sampled =
            Some(SampledSummary { trials: config.trials, accepts, accept_frequency: freq, bound, within_bound: within });
        report.trials = outcomes.iter().enumerate().map(|(t, o)| TrialRecord::from_outcome(t, o)).collect();
    }
    Ok(())
}

fn swap_bench(config: &ExperimentConfig, report: &mut ExperimentReport) -> Result<()> {
    let deviations: Vec<f64> = (0..config.samples as u64)
        .into_par_iter()
        .map(|k| -> Result<f64> {
            let mut rng = TrialRng::new(config.seed, k);
            let n = 1 + (k as usize % 2);
            let names = |tag: &str| (0..n).map(|i| format!("{tag}{i}")).collect::<Vec<_>>();
            let (xs, ys) = (names("x"), names("y"));
            let rho = random::random_density(&mut rng, RegisterLayout::qubits(xs.clone())?, None);
            let sigma = random::random_density(&mut rng, RegisterLayout::qubits(ys.clone())?, None);
            let joint = rho.tensor(&sigma)?;
            let r1: Vec<&str> = xs.iter().map(String::as_str).collect();
            let r2: Vec<&str> = ys.iter().map(String::as_str).collect();
            let circuit = swap_accept_probability(&joint, &r1, &r2)?;
            Ok((circuit - swap_formula(rho.matrix(), sigma.matrix())?).abs())
        })
        .collect::<Result<_>>()?;
    let max = deviations.iter().copied().fold(0.0, f64::max);

    let pure = |a: [num_complex::Complex64; 2], b: [num_complex::Complex64; 2]| -> Result<f64> {
        let x = crate::kernel::DensityOperator::new(RegisterLayout::qubits(["x"])?, ComplexMatrix::projector_onto(&a))?;
        let y = crate::kernel::DensityOperator::new(RegisterLayout::qubits(["y"])?, ComplexMatrix::projector_onto(&b))?;
        swap_accept_probability(&x.tensor(&y)?, &["x"], &["y"])
    };
    let identical = pure([ONE, ZERO], [ONE, ZERO])?;
    let orthogonal = pure([ONE, ZERO], [ZERO, ONE])?;
    let tol = config.tolerances.swap;
    report.validation.check(max <= tol, || format!("circuit deviates from formula by {max:.3e}"));
    report.validation.check((identical - 1.0).abs() <= tol, || format!("identical pure states accepted with {identical}"));
    report.validation.check((orthogonal - 0.5).abs() <= tol, || format!("orthogonal pure states accepted with {orthogonal}"));
    report.swap_bench = Some(SwapBenchSummary {
        instances: config.samples,
        max_abs_deviation: max,
        identical_pure: identical,
        orthogonal_pure: orthogonal,
    });
    Ok(())
}
