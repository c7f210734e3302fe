//! Proof states: the honest prover and a fixed library of cheating ones.
//!
//! Every proof lives on `(P, S1, S1', …, Sℓ, Sℓ')`. The primed registers are
//! the verifier's halves of `ℓ` EPR pairs; a prover may act only on `P` and
//! the unprimed halves, which keeps the primed marginal maximally mixed.

use crate::channels::choi_state_on;
use crate::error::{Error, Result};
use crate::kernel::{make_gate, DensityOperator, Gate, RegisterLayout, StateVector, TrialRng};
use crate::linalg::ComplexMatrix;
use crate::metrics;
use crate::random::haar_unitary;

use super::toy::ToyVerifier;

/// Tolerance for the maximally-mixed check on the verifier halves.
pub const MARGINAL_TOL: f64 = 1e-9;

pub const MIN_PAIRS: usize = 2;
pub const MAX_PAIRS: usize = 4;

#[derive(Debug, Clone)]
pub enum StrategyKind {
    Honest,
    /// Honest structure with `R(q′)†` in place of `R(q)†`.
    ChoiProduct(f64),
    /// Untouched EPR pairs.
    IdleEpr,
    /// One Haar-random unitary on `(P, S1, …, Sℓ)` after the honest-shaped
    /// witness and EPR pairs.
    LocalUnitaries(u64),
    /// Any state on the proof layout; validated like the rest.
    CustomState(DensityOperator),
}

#[derive(Debug, Clone)]
pub struct ProverStrategy {
    pub kind: StrategyKind,
    /// Replaces the top eigenvector of `M` as the content of `P`.
    pub witness_override: Option<StateVector>,
}

impl ProverStrategy {
    pub fn new(kind: StrategyKind) -> Self {
        Self { kind, witness_override: None }
    }

    pub fn with_witness(mut self, witness: StateVector) -> Self {
        self.witness_override = Some(witness);
        self
    }
}

#[derive(Debug, Clone)]
pub struct ProtocolState {
    state: DensityOperator,
    l: usize,
}

impl ProtocolState {
    /// Checks the layout and the verifier-half marginal.
    pub fn new(state: DensityOperator, l: usize) -> Result<Self> {
        let p_qubits = state.layout().register("P")?.qubits;
        let expected = proof_layout(p_qubits, l)?;
        if state.layout() != &expected {
            return Err(Error::InvalidLayout(format!("proof layout must be {:?}", expected.names().collect::<Vec<_>>())));
        }
        state.validate()?;
        validate_marginal(&state, l)?;
        Ok(Self { state, l })
    }

    pub fn state(&self) -> &DensityOperator {
        &self.state
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn p_qubits(&self) -> usize {
        self.state.layout().register("P").map(|r| r.qubits).unwrap_or(0)
    }

    pub fn pairs(&self) -> Vec<(String, String)> {
        pair_names(self.l)
    }
}

pub fn pair_names(l: usize) -> Vec<(String, String)> {
    (1..=l).map(|i| (format!("S{i}"), format!("S{i}'"))).collect()
}

pub fn proof_layout(p_qubits: usize, l: usize) -> Result<RegisterLayout> {
    check_l(l)?;
    let mut parts = vec![("P".to_string(), p_qubits)];
    for (s, sp) in pair_names(l) {
        parts.push((s, 1));
        parts.push((sp, 1));
    }
    RegisterLayout::new(parts)
}

fn check_l(l: usize) -> Result<()> {
    if !(MIN_PAIRS..=MAX_PAIRS).contains(&l) {
        return Err(Error::InvalidParameter(format!("ℓ must lie in {MIN_PAIRS}..={MAX_PAIRS}, got {l}")));
    }
    Ok(())
}

/// Trace distance between the primed marginal and `I/2^ℓ`; errors above
/// [`MARGINAL_TOL`].
pub fn validate_marginal(state: &DensityOperator, l: usize) -> Result<f64> {
    let primed: Vec<String> = pair_names(l).into_iter().map(|(_, sp)| sp).collect();
    let marginal = state.partial_trace(&primed)?;
    let mixed = DensityOperator::maximally_mixed(marginal.layout().clone());
    let d = metrics::state_distance(&marginal, &mixed)?;
    if d > MARGINAL_TOL {
        return Err(Error::MarginalViolation(d));
    }
    Ok(d)
}

/// `q = 1/(2p)` clamped to `[1/2, 1]`.
pub fn honest_q(p_x: f64) -> f64 {
    (0.5 / p_x).clamp(0.5, 1.0)
}

/// Witness `ω` in `P` and `J(R(q)†)` on every pair, `q = 1/(2p_x)`.
pub fn honest_proof(v: &ToyVerifier, l: usize) -> Result<ProtocolState> {
    let (p_x, omega) = v.witness()?;
    if p_x < 0.5 - 1e-12 {
        return Err(Error::Precondition(format!("honest proof needs maximum acceptance ≥ 1/2, got {p_x}")));
    }
    choi_product_state(&omega, honest_q(p_x), l)
}

fn choi_product_state(witness: &StateVector, q: f64, l: usize) -> Result<ProtocolState> {
    let r_dag = make_gate(Gate::R(q))?.adjoint();
    let mut state = witness.clone();
    for (s, sp) in pair_names(l) {
        state = state.tensor(&choi_state_on(&r_dag, &s, &sp)?)?;
    }
    ProtocolState::new(state.density(), l)
}

pub fn cheating_proof(strategy: &ProverStrategy, v: &ToyVerifier, l: usize) -> Result<ProtocolState> {
    check_l(l)?;
    let witness = match &strategy.witness_override {
        Some(w) => {
            if w.layout() != &v.p_layout() {
                return Err(Error::InvalidLayout("witness override must live on P".into()));
            }
            w.clone()
        }
        None => v.witness()?.1,
    };
    match &strategy.kind {
        StrategyKind::Honest => match &strategy.witness_override {
            None => honest_proof(v, l),
            Some(_) => choi_product_state(&witness, honest_q(v.witness()?.0), l),
        },
        StrategyKind::ChoiProduct(q) => choi_product_state(&witness, *q, l),
        StrategyKind::IdleEpr => choi_product_state(&witness, 0.0, l),
        StrategyKind::LocalUnitaries(seed) => {
            let idle = choi_product_state(&witness, 0.0, l)?;
            let mut rng = TrialRng::from_seed(*seed);
            let prover: Vec<String> = std::iter::once("P".to_string()).chain(pair_names(l).into_iter().map(|(s, _)| s)).collect();
            let u = haar_unitary(&mut rng, 1 << (v.p_qubits() + l));
            ProtocolState::new(idle.state.apply_unitary(&u, &prover)?, l)
        }
        StrategyKind::CustomState(rho) => ProtocolState::new(rho.clone(), l),
    }
}

/// `ω ⊗ J(R(q₁)†) ⊗ … ⊗ J(R(qℓ)†)` with a different `q` per pair.
pub fn choi_pairs_state(witness: &StateVector, qs: &[f64]) -> Result<DensityOperator> {
    let mut state = witness.clone();
    for ((s, sp), &q) in pair_names(qs.len()).into_iter().zip(qs) {
        let r_dag = make_gate(Gate::R(q))?.adjoint();
        state = state.tensor(&choi_state_on(&r_dag, &s, &sp)?)?;
    }
    Ok(state.density())
}

/// `ω ⊗ (U₁ ⊗ I)|Φ⁺⟩ ⊗ …` for arbitrary single-qubit unitaries per pair.
pub fn unitary_pairs_state(witness: &StateVector, us: &[ComplexMatrix]) -> Result<DensityOperator> {
    let mut state = witness.clone();
    for ((s, sp), u) in pair_names(us.len()).into_iter().zip(us) {
        state = state.tensor(&choi_state_on(u, &s, &sp)?)?;
    }
    Ok(state.density())
}
