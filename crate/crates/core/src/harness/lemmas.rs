//! Randomized inequality suite. Each check draws `samples` random instances
//! and records the worst signed margin.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channels::pinch_registers;
use crate::error::Result;
use crate::kernel::{DensityOperator, RegisterLayout, TrialRng};
use crate::linalg::ComplexMatrix;
use crate::metrics;
use crate::random;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaMargin {
    pub name: String,
    pub checks: usize,
    pub worst_margin: f64,
    pub violations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lemma {
    Holder,
    Triangle,
    MonotonicityPartialTrace,
    MonotonicityPinch,
    MonotonicityUnitary,
    FvgLower,
    FvgUpper,
    Gentle,
    AdditivePerturbation,
    MixturePerturbation,
}

impl Lemma {
    pub const ALL: [Lemma; 10] = [
        Lemma::Holder,
        Lemma::Triangle,
        Lemma::MonotonicityPartialTrace,
        Lemma::MonotonicityPinch,
        Lemma::MonotonicityUnitary,
        Lemma::FvgLower,
        Lemma::FvgUpper,
        Lemma::Gentle,
        Lemma::AdditivePerturbation,
        Lemma::MixturePerturbation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::Holder => "holder",
            Lemma::Triangle => "triangle",
            Lemma::MonotonicityPartialTrace => "monotonicity_partial_trace",
            Lemma::MonotonicityPinch => "monotonicity_pinch",
            Lemma::MonotonicityUnitary => "monotonicity_unitary",
            Lemma::FvgLower => "fuchs_van_de_graaf_lower",
            Lemma::FvgUpper => "fuchs_van_de_graaf_upper",
            Lemma::Gentle => "gentle_measurement",
            Lemma::AdditivePerturbation => "additive_perturbation",
            Lemma::MixturePerturbation => "mixture_perturbation",
        }
    }

    /// One random instance drawn from `rng`.
    pub fn sample(self, rng: &mut TrialRng) -> Result<f64> {
        match self {
            Lemma::Holder => {
                let d = rng.random_range(2..=16);
                metrics::holder_margin(&random::ginibre(rng, d, d), &random::ginibre(rng, d, d))
            }
            Lemma::Triangle => {
                let d = rng.random_range(2..=16);
                let (a, b, c) = (random::ginibre(rng, d, d), random::ginibre(rng, d, d), random::ginibre(rng, d, d));
                metrics::triangle_margin(&a, &b, &c)
            }
            Lemma::MonotonicityPartialTrace => {
                let n = rng.random_range(2..=4);
                let layout = qubit_layout(n);
                let (rho, sigma) = density_pair(rng, &layout);
                let drop = format!("q{}", rng.random_range(0..n));
                metrics::monotonicity_margin(&rho, &sigma, |x| x.trace_out(&[drop.as_str()]))
            }
            Lemma::MonotonicityPinch => {
                let n = rng.random_range(2..=4);
                let layout = qubit_layout(n);
                let (rho, sigma) = density_pair(rng, &layout);
                metrics::monotonicity_margin(&rho, &sigma, |x| pinch_registers(x, "q0", "q1"))
            }
            Lemma::MonotonicityUnitary => {
                let d = rng.random_range(2..=16);
                let (rho, sigma) = (random_density_dim(rng, d), random_density_dim(rng, d));
                let u = random::haar_unitary(rng, d);
                let conj = |m: &ComplexMatrix| u.matmul(m).matmul(&u.adjoint());
                let before = metrics::trace_distance(&rho, &sigma)?;
                let after = metrics::trace_distance(&conj(&rho), &conj(&sigma))?;
                Ok(before - after)
            }
            Lemma::FvgLower | Lemma::FvgUpper => {
                let n = rng.random_range(1..=4);
                let (rho, sigma) = density_pair(rng, &qubit_layout(n));
                let (lo, hi) = metrics::fvg_margins(&rho, &sigma)?;
                Ok(if self == Lemma::FvgLower { lo } else { hi })
            }
            Lemma::Gentle => {
                let n = rng.random_range(1..=4);
                let layout = qubit_layout(n);
                let d = layout.dim();
                let (rank, k) = (rng.random_range(1..=d), rng.random_range(0..d));
                let rho = random::random_density(rng, layout, Some(rank));
                let proj = random::random_projector(rng, d, k);
                metrics::gentle_margin(&rho, &proj)
            }
            Lemma::AdditivePerturbation => {
                let d = rng.random_range(2..=16);
                let eps: f64 = rng.random_range(0.0..1.0);
                let a = random::random_hermitian(rng, d);
                let rank = rng.random_range(1..=d);
                let b = random::random_psd(rng, d, rank);
                let b = b.scale_real(eps * rng.random_range(0.0..=1.0) / b.trace().re);
                metrics::additive_perturbation_margin(&a, &b, eps)
            }
            Lemma::MixturePerturbation => {
                let n = rng.random_range(1..=4);
                let (rho, sigma) = density_pair(rng, &qubit_layout(n));
                let eps: f64 = rng.random_range(0.0..1.0);
                metrics::mixture_perturbation_margin(&rho, &sigma, eps)
            }
        }
    }
}

fn qubit_layout(n: usize) -> RegisterLayout {
    RegisterLayout::qubits((0..n).map(|i| format!("q{i}"))).expect("distinct names")
}

fn density_pair(rng: &mut TrialRng, layout: &RegisterLayout) -> (DensityOperator, DensityOperator) {
    let d = layout.dim();
    let r1 = rng.random_range(1..=d);
    let r2 = rng.random_range(1..=d);
    (random::random_density(rng, layout.clone(), Some(r1)), random::random_density(rng, layout.clone(), Some(r2)))
}

fn random_density_dim(rng: &mut TrialRng, d: usize) -> ComplexMatrix {
    let rank = rng.random_range(1..=d);
    let m = random::random_psd(rng, d, rank);
    let tr = m.trace().re;
    m.scale_real(1.0 / tr)
}

/// Runs `samples` instances of `lemma`. Instance `k` uses stream
/// `(seed, lemma_index · 2³² + k)`, so the result is independent of threading.
pub fn run_lemma(lemma: Lemma, samples: usize, seed: u64, tol: f64) -> Result<LemmaMargin> {
    let idx = Lemma::ALL.iter().position(|&l| l == lemma).expect("listed") as u64;
    let margins: Vec<f64> = (0..samples as u64)
        .into_par_iter()
        .map(|k| lemma.sample(&mut TrialRng::new(seed, (idx << 32) | k)))
        .collect::<Result<_>>()?;
    Ok(LemmaMargin {
        name: lemma.name().to_string(),
        checks: samples,
        worst_margin: margins.iter().copied().fold(f64::INFINITY, f64::min),
        violations: margins.iter().filter(|&&m| m < -tol).count(),
    })
}

pub fn run_lemma_suite(samples: usize, seed: u64, tol: f64) -> Result<Vec<LemmaMargin>> {
    Lemma::ALL.iter().map(|&l| run_lemma(l, samples, seed, tol)).collect()
}
