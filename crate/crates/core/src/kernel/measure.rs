//! Projective measurements on pure and mixed states.

use num_complex::Complex64;

use super::gates::bell_vectors;
use super::rng::TrialRng;
use super::state::{DensityOperator, StateVector};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ONE, STRUCTURE_TOL, ZERO};

/// Outcomes below this probability are reported as impossible.
pub const NEGLIGIBLE_PROBABILITY: f64 = 1e-14;

/// Labels for the Bell measurement, in projector order.
pub const BELL_LABELS: [&str; 4] = ["phi+", "phi-", "psi+", "psi-"];

#[derive(Debug, Clone)]
pub struct ProjectiveMeasurement {
    projectors: Vec<(String, ComplexMatrix)>,
    target: Vec<String>,
}

impl ProjectiveMeasurement {
    /// Checks that every projector is Hermitian and idempotent, that they are
    /// pairwise orthogonal, and that they sum to the identity.
    pub fn new<S: Into<String>>(projectors: Vec<(String, ComplexMatrix)>, target: impl IntoIterator<Item = S>) -> Result<Self> {
        let target: Vec<String> = target.into_iter().map(Into::into).collect();
        let (_, first) = projectors.first().ok_or_else(|| Error::InvalidMeasurement("no projectors".into()))?;
        let d = first.ensure_square()?;
        let mut sum = ComplexMatrix::zeros(d, d);
        for (i, (label, p)) in projectors.iter().enumerate() {
            if p.rows() != d || !p.is_square() {
                return Err(Error::InvalidMeasurement(format!("projector `{label}` has the wrong shape")));
            }
            let dev = p.projector_deviation();
            if dev > STRUCTURE_TOL {
                return Err(Error::InvalidMeasurement(format!("`{label}` is not a projector ({dev:.3e})")));
            }
            for (other, q) in &projectors[..i] {
                let overlap = p.matmul(q).frobenius_norm();
                if overlap > STRUCTURE_TOL {
                    return Err(Error::InvalidMeasurement(format!("`{label}` and `{other}` are not orthogonal")));
                }
            }
            sum = &sum + p;
        }
        let completeness = sum.max_abs_diff(&ComplexMatrix::identity(d));
        if completeness > STRUCTURE_TOL {
            return Err(Error::InvalidMeasurement(format!("projectors do not sum to identity ({completeness:.3e})")));
        }
        Ok(Self { projectors, target })
    }

    /// Standard basis on `n_qubits` qubits, labels are bit strings.
    pub fn standard_basis<S: Into<String>>(target: impl IntoIterator<Item = S>, n_qubits: usize) -> Result<Self> {
        let d = 1usize << n_qubits;
        let projectors = (0..d)
            .map(|k| {
                let mut m = ComplexMatrix::zeros(d, d);
                m[(k, k)] = ONE;
                (format!("{k:0width$b}", width = n_qubits), m)
            })
            .collect();
        Self::new(projectors, target)
    }

    /// Bell basis on two single-qubit registers, outcomes labelled
    /// [`BELL_LABELS`].
    pub fn bell<S: Into<String>>(target: impl IntoIterator<Item = S>) -> Result<Self> {
        let projectors = bell_vectors()
            .iter()
            .zip(BELL_LABELS)
            .map(|(v, label)| (label.to_string(), ComplexMatrix::projector_onto(v)))
            .collect();
        Self::new(projectors, target)
    }

    pub fn target(&self) -> &[String] {
        &self.target
    }

    pub fn projectors(&self) -> &[(String, ComplexMatrix)] {
        &self.projectors
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.projectors.iter().map(|(l, _)| l.as_str())
    }
}

#[derive(Debug, Clone)]
pub enum PostState {
    Pure(StateVector),
    Mixed(DensityOperator),
}

impl PostState {
    pub fn to_density(&self) -> DensityOperator {
        match self {
            PostState::Pure(s) => s.density(),
            PostState::Mixed(r) => r.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct MeasurementRecord {
    pub label: String,
    pub index: usize,
    pub probability: f64,
    /// Renormalized post-measurement state; `None` for impossible outcomes.
    pub post_state: Option<PostState>,
}

pub enum Sampling<'a> {
    /// Every outcome with its exact probability.
    Exhaustive,
    /// One outcome drawn from the stream.
    Sampled(&'a mut TrialRng),
}

/// States that can be measured projectively.
pub trait Measurable {
    fn outcome_probabilities(&self, m: &ProjectiveMeasurement) -> Result<Vec<f64>>;
    fn post_measurement(&self, m: &ProjectiveMeasurement, outcome: usize, probability: f64) -> Result<PostState>;
}

fn check_target(layout: &super::layout::RegisterLayout, m: &ProjectiveMeasurement) -> Result<Vec<usize>> {
    let qubits = layout.qubit_positions(m.target())?;
    let d = m.projectors[0].1.rows();
    if d != 1 << qubits.len() {
        return Err(Error::DimensionMismatch { expected: 1 << qubits.len(), found: d });
    }
    Ok(qubits)
}

impl Measurable for StateVector {
    fn outcome_probabilities(&self, m: &ProjectiveMeasurement) -> Result<Vec<f64>> {
        let qubits = check_target(self.layout(), m)?;
        Ok(m.projectors
            .iter()
            .map(|(_, p)| {
                let v = self.apply_operator_unchecked(p, &qubits);
                v.iter().map(|z| z.norm_sqr()).sum()
            })
            .collect())
    }

    fn post_measurement(&self, m: &ProjectiveMeasurement, outcome: usize, probability: f64) -> Result<PostState> {
        let qubits = check_target(self.layout(), m)?;
        let scale = Complex64::new(1.0 / probability.sqrt(), 0.0);
        let amps = self.apply_operator_unchecked(&m.projectors[outcome].1, &qubits).into_iter().map(|z| z * scale).collect();
        Ok(PostState::Pure(StateVector::from_parts_unchecked(self.layout().clone(), amps)))
    }
}

impl Measurable for DensityOperator {
    fn outcome_probabilities(&self, m: &ProjectiveMeasurement) -> Result<Vec<f64>> {
        check_target(self.layout(), m)?;
        let reduced = self.partial_trace(m.target())?;
        Ok(m.projectors.iter().map(|(_, p)| p.trace_product(reduced.matrix()).re).collect())
    }

    fn post_measurement(&self, m: &ProjectiveMeasurement, outcome: usize, probability: f64) -> Result<PostState> {
        let qubits = check_target(self.layout(), m)?;
        let projected = self.conjugate_unchecked(&m.projectors[outcome].1, &qubits);
        Ok(PostState::Mixed(projected.scaled(1.0 / probability)))
    }
}

/// Measures `state`. Exhaustive mode returns every outcome in projector
/// order; sampled mode returns exactly one record.
pub fn measure<S: Measurable>(state: &S, m: &ProjectiveMeasurement, sampling: Sampling<'_>) -> Result<Vec<MeasurementRecord>> {
    let probs: Vec<f64> =
        state.outcome_probabilities(m)?.into_iter().map(|p| if p < NEGLIGIBLE_PROBABILITY { 0.0 } else { p.min(1.0) }).collect();
    let record = |k: usize| -> Result<MeasurementRecord> {
        let probability = probs[k];
        let post_state = if probability > 0.0 { Some(state.post_measurement(m, k, probability)?) } else { None };
        Ok(MeasurementRecord { label: m.projectors[k].0.clone(), index: k, probability, post_state })
    };
    match sampling {
        Sampling::Exhaustive => (0..probs.len()).map(record).collect(),
        Sampling::Sampled(rng) => {
            if probs.iter().all(|&p| p == 0.0) {
                return Err(Error::Precondition("state has no weight on any outcome".into()));
            }
            let k = rng.choose_weighted(&probs);
            Ok(vec![record(k)?])
        }
    }
}

/// `|0…0⟩⟨0…0|` and its complement, labelled `zero` / `nonzero`.
pub fn all_zero_test<S: Into<String>>(target: impl IntoIterator<Item = S>, n_qubits: usize) -> Result<ProjectiveMeasurement> {
    let d = 1usize << n_qubits;
    let mut zero = ComplexMatrix::zeros(d, d);
    zero[(0, 0)] = ONE;
    let mut rest = ComplexMatrix::identity(d);
    rest[(0, 0)] = ZERO;
    ProjectiveMeasurement::new(vec![("zero".into(), zero), ("nonzero".into(), rest)], target)
}
