//! The verifier `W`.
//!
//! 1. keep a uniformly random ordered pair of the `ℓ` register pairs
//! 2. pinch both kept pairs
//! 3. flip a coin `b`
//! 4. `b = 0`: `W_B` on `(S1, S1')`, drop `S1'`, fresh `A = |0̄⟩`, `V`,
//!    phase flip on `(P, A, S1)`, `V†`, post-selection on `(S2, S2', S1)`.
//!    Failure accepts; otherwise measure `(A, S2)` and reject on all zeros.
//! 5. `b = 1`: SWAP test between the two pairs.
//!
//! Exact mode evolves the pair-averaged density operator once. Sampled mode
//! precomputes every outcome distribution per ordered pair and then draws in
//! protocol order, which consumes the stream exactly like measuring step by
//! step (see [`run_stepwise`]).

use serde::{Deserialize, Serialize};

use crate::channels::pinch_registers;
use crate::error::{Error, Result};
use crate::kernel::measure::ProjectiveMeasurement;
use crate::kernel::symmetrize::{keep_ordered_pair, sample_ordered_pair};
use crate::kernel::{make_gate, measure, symmetrize_pairs, DensityOperator, Gate, PairMode, Sampling, TrialRng};

use super::postselect::{post_selection, BellOutcome};
use super::prover::ProtocolState;
use super::swap::swap_test;
use super::toy::{ancilla_zero, ToyVerifier};

const S1: &str = "S1";
const S1P: &str = "S1'";
const S2: &str = "S2";
const S2P: &str = "S2'";
const A: &str = "A";
const P: &str = "P";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Accept,
    Reject,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    B0PostselFail,
    B0Measured,
    B1Swap,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub verdict: Verdict,
    pub b: u8,
    pub pair: (usize, usize),
    pub branch: Branch,
    pub bell: Option<BellOutcome>,
    /// Standard-basis string on `(A, S2)`.
    pub measured: Option<String>,
    /// SWAP-test ancilla bit.
    pub swap_bit: Option<u8>,
}

/// Probability masses of the five terminal branches; they sum to 1.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct BranchBreakdown {
    pub b0_postsel_fail: f64,
    pub b0_all_zero_reject: f64,
    pub b0_measured_accept: f64,
    pub b1_swap_accept: f64,
    pub b1_swap_reject: f64,
}

impl BranchBreakdown {
    pub fn accept(&self) -> f64 {
        self.b0_postsel_fail + self.b0_measured_accept + self.b1_swap_accept
    }

    pub fn reject(&self) -> f64 {
        self.b0_all_zero_reject + self.b1_swap_reject
    }

    pub fn total(&self) -> f64 {
        self.accept() + self.reject()
    }

    fn scaled_add(&mut self, w: f64, o: &Self) {
        self.b0_postsel_fail += w * o.b0_postsel_fail;
        self.b0_all_zero_reject += w * o.b0_all_zero_reject;
        self.b0_measured_accept += w * o.b0_measured_accept;
        self.b1_swap_accept += w * o.b1_swap_accept;
        self.b1_swap_reject += w * o.b1_swap_reject;
    }

    /// Uniform average of per-pair breakdowns.
    pub fn average(parts: &[Self]) -> Self {
        let mut out = Self::default();
        let w = 1.0 / parts.len() as f64;
        for p in parts {
            out.scaled_add(w, p);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExactResult {
    pub accept_probability: f64,
    pub reject_probability: f64,
    pub branches: BranchBreakdown,
}

impl From<BranchBreakdown> for ExactResult {
    fn from(branches: BranchBreakdown) -> Self {
        Self { accept_probability: branches.accept(), reject_probability: branches.reject(), branches }
    }
}

/// Outcome distributions downstream of a fixed (pinched) pair state.
#[derive(Debug, Clone)]
pub struct PairAnalysis {
    /// `[P(0), P(1)]` for the SWAP ancilla.
    pub swap: Vec<f64>,
    pub postsel: Vec<PostselBranch>,
}

#[derive(Debug, Clone)]
pub struct PostselBranch {
    pub outcome: BellOutcome,
    pub probability: f64,
    /// `(label, probability)` of the `(A, S2)` measurement, success only.
    pub final_measurement: Vec<(String, f64)>,
}

impl PairAnalysis {
    pub fn breakdown(&self) -> BranchBreakdown {
        let mut out =
            BranchBreakdown { b1_swap_accept: 0.5 * self.swap[0], b1_swap_reject: 0.5 * self.swap[1], ..Default::default() };
        for br in &self.postsel {
            if !br.outcome.is_success() {
                out.b0_postsel_fail += 0.5 * br.probability;
                continue;
            }
            for (label, p) in &br.final_measurement {
                let mass = 0.5 * br.probability * p;
                if is_all_zero(label) {
                    out.b0_all_zero_reject += mass;
                } else {
                    out.b0_measured_accept += mass;
                }
            }
        }
        out
    }
}

fn is_all_zero(label: &str) -> bool {
    label.bytes().all(|c| c == b'0')
}

fn check_proof(proof: &ProtocolState, v: &ToyVerifier) -> Result<()> {
    if proof.p_qubits() != v.p_qubits() {
        return Err(Error::InvalidLayout(format!("proof P has {} qubits, verifier expects {}", proof.p_qubits(), v.p_qubits())));
    }
    if proof.l() < 2 {
        return Err(Error::InvalidParameter("ℓ must be at least 2".into()));
    }
    Ok(())
}

/// Step 2 on a reduced state over `(P, S1, S1', S2, S2')`.
pub fn pinch_pairs(kept: &DensityOperator) -> Result<DensityOperator> {
    pinch_registers(&pinch_registers(kept, S1, S1P)?, S2, S2P)
}

/// `b = 0` evolution up to, not including, post-selection.
pub fn b0_pre_postselection(pinched: &DensityOperator, v: &ToyVerifier) -> Result<DensityOperator> {
    let wb = make_gate(Gate::Wb)?;
    let rho = pinched.apply_unitary(&wb, &[S1, S1P])?.trace_out(&[S1P])?;
    let rho = rho.tensor(&ancilla_zero(v.a_qubits()).density())?;
    rho.apply_unitary(v.v(), &[P, A])?.apply_unitary(&v.phase_flip(), &[P, A, S1])?.apply_unitary(&v.v().adjoint(), &[P, A])
}

fn final_measurement(v: &ToyVerifier) -> Result<ProjectiveMeasurement> {
    ProjectiveMeasurement::standard_basis([A, S2], v.a_qubits() + 1)
}

/// All outcome distributions for one pinched pair state.
pub fn analyze_pinched(pinched: &DensityOperator, v: &ToyVerifier) -> Result<PairAnalysis> {
    let swap = swap_test(pinched, &[S1, S1P], &[S2, S2P], Sampling::Exhaustive)?.iter().map(|r| r.probability).collect();
    let pre = b0_pre_postselection(pinched, v)?;
    let fm = final_measurement(v)?;
    let postsel = post_selection(&pre, S2, S2P, S1, Sampling::Exhaustive)?
        .into_iter()
        .map(|rec| {
            let final_measurement = match (&rec.state, rec.outcome.is_success()) {
                (Some(state), true) => {
                    measure(state, &fm, Sampling::Exhaustive)?.into_iter().map(|m| (m.label, m.probability)).collect()
                }
                _ => Vec::new(),
            };
            Ok(PostselBranch { outcome: rec.outcome, probability: rec.probability, final_measurement })
        })
        .collect::<Result<_>>()?;
    Ok(PairAnalysis { swap, postsel })
}

/// Exact acceptance, averaging over ordered pairs and the coin.
pub fn verifier_w_exact(proof: &ProtocolState, v: &ToyVerifier) -> Result<ExactResult> {
    check_proof(proof, v)?;
    let sym = symmetrize_pairs(proof.state(), &proof.pairs(), PairMode::ExactAverage)?;
    let pinched = pinch_pairs(&sym.state)?;
    Ok(analyze_pinched(&pinched, v)?.breakdown().into())
}

/// Breakdown conditioned on keeping ordered pair `(i, j)`.
pub fn verifier_w_pair(proof: &ProtocolState, v: &ToyVerifier, i: usize, j: usize) -> Result<BranchBreakdown> {
    check_proof(proof, v)?;
    let kept = keep_ordered_pair(proof.state(), &proof.pairs(), i, j)?;
    Ok(analyze_pinched(&pinch_pairs(&kept)?, v)?.breakdown())
}

/// Precomputed outcome distributions for repeated sampled runs.
#[derive(Debug, Clone)]
pub struct SampledVerifier {
    l: usize,
    /// Indexed by `i * l + j`; `None` on the diagonal.
    pairs: Vec<Option<PairAnalysis>>,
}

impl SampledVerifier {
    pub fn new(proof: &ProtocolState, v: &ToyVerifier) -> Result<Self> {
        check_proof(proof, v)?;
        let l = proof.l();
        let mut pairs = Vec::with_capacity(l * l);
        for i in 0..l {
            for j in 0..l {
                pairs.push(if i == j {
                    None
                } else {
                    let kept = keep_ordered_pair(proof.state(), &proof.pairs(), i, j)?;
                    Some(analyze_pinched(&pinch_pairs(&kept)?, v)?)
                });
            }
        }
        Ok(Self { l, pairs })
    }

    pub fn analysis(&self, i: usize, j: usize) -> Option<&PairAnalysis> {
        self.pairs.get(i * self.l + j).and_then(|a| a.as_ref())
    }

    /// Exact result from the cached per-pair distributions.
    pub fn exact(&self) -> ExactResult {
        let parts: Vec<BranchBreakdown> = self.pairs.iter().flatten().map(|a| a.breakdown()).collect();
        BranchBreakdown::average(&parts).into()
    }

    pub fn run(&self, rng: &mut TrialRng) -> RunOutcome {
        let (i, j) = sample_ordered_pair(rng, self.l);
        let analysis = self.analysis(i, j).expect("distinct pair");
        let b = rng.coin();
        if b == 1 {
            let bit = rng.choose_weighted(&analysis.swap) as u8;
            return RunOutcome {
                verdict: if bit == 0 { Verdict::Accept } else { Verdict::Reject },
                b,
                pair: (i, j),
                branch: Branch::B1Swap,
                bell: None,
                measured: None,
                swap_bit: Some(bit),
            };
        }
        let probs: Vec<f64> = analysis.postsel.iter().map(|br| br.probability).collect();
        let branch = &analysis.postsel[rng.choose_weighted(&probs)];
        if !branch.outcome.is_success() {
            return RunOutcome {
                verdict: Verdict::Accept,
                b,
                pair: (i, j),
                branch: Branch::B0PostselFail,
                bell: Some(branch.outcome),
                measured: None,
                swap_bit: None,
            };
        }
        let probs: Vec<f64> = branch.final_measurement.iter().map(|(_, p)| *p).collect();
        let label = branch.final_measurement[rng.choose_weighted(&probs)].0.clone();
        RunOutcome {
            verdict: if is_all_zero(&label) { Verdict::Reject } else { Verdict::Accept },
            b,
            pair: (i, j),
            branch: Branch::B0Measured,
            bell: Some(branch.outcome),
            measured: Some(label),
            swap_bit: None,
        }
    }
}

/// One run that measures step by step without any caching.
pub fn run_stepwise(proof: &ProtocolState, v: &ToyVerifier, rng: &mut TrialRng) -> Result<RunOutcome> {
    check_proof(proof, v)?;
    let sym = symmetrize_pairs(proof.state(), &proof.pairs(), PairMode::Sample(rng))?;
    let pair = sym.chosen.expect("sampled");
    let pinched = pinch_pairs(&sym.state)?;
    let b = rng.coin();
    if b == 1 {
        let rec = swap_test(&pinched, &[S1, S1P], &[S2, S2P], Sampling::Sampled(rng))?.remove(0);
        let bit = rec.index as u8;
        return Ok(RunOutcome {
            verdict: if bit == 0 { Verdict::Accept } else { Verdict::Reject },
            b,
            pair,
            branch: Branch::B1Swap,
            bell: None,
            measured: None,
            swap_bit: Some(bit),
        });
    }
    let pre = b0_pre_postselection(&pinched, v)?;
    let rec = post_selection(&pre, S2, S2P, S1, Sampling::Sampled(rng))?.remove(0);
    if !rec.success() {
        return Ok(RunOutcome {
            verdict: Verdict::Accept,
            b,
            pair,
            branch: Branch::B0PostselFail,
            bell: Some(rec.outcome),
            measured: None,
            swap_bit: None,
        });
    }
    let state = rec.state.expect("possible outcome has a state");
    let m = measure(&state, &final_measurement(v)?, Sampling::Sampled(rng))?.remove(0);
    Ok(RunOutcome {
        verdict: if is_all_zero(&m.label) { Verdict::Reject } else { Verdict::Accept },
        b,
        pair,
        branch: Branch::B0Measured,
        bell: Some(rec.outcome),
        measured: Some(m.label),
        swap_bit: None,
    })
}

pub enum VerifierMode<'a> {
    Exact,
    Sampled(&'a mut TrialRng),
}

#[derive(Debug, Clone)]
pub enum VerifierOutput {
    Exact(ExactResult),
    Sampled(RunOutcome),
}

pub fn verifier_w(proof: &ProtocolState, v: &ToyVerifier, mode: VerifierMode<'_>) -> Result<VerifierOutput> {
    Ok(match mode {
        VerifierMode::Exact => VerifierOutput::Exact(verifier_w_exact(proof, v)?),
        VerifierMode::Sampled(rng) => VerifierOutput::Sampled(run_stepwise(proof, v, rng)?),
    })
}
