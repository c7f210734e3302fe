//! Teleportation-style post-selection on `(S, S′, X)`.
//!
//! `(S, S′)` holds a Choi state `J(U)`, `X` holds the input. A Bell
//! measurement on `(S′, X)` applies `U` to the input on `S` when the outcome
//! is `Φ⁺`, or after an `X` correction when it is `Ψ⁺`. `Φ⁻` and `Ψ⁻` fail.

use crate::channels::BellSubspaces;
use crate::error::{Error, Result};
use crate::kernel::measure::{ProjectiveMeasurement, BELL_LABELS};
use crate::kernel::{make_gate, measure, DensityOperator, Gate, Sampling};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellOutcome {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellOutcome {
    const ALL: [BellOutcome; 4] = [Self::PhiPlus, Self::PhiMinus, Self::PsiPlus, Self::PsiMinus];

    pub fn label(self) -> &'static str {
        BELL_LABELS[self as usize]
    }

    pub fn is_success(self) -> bool {
        matches!(self, Self::PhiPlus | Self::PsiPlus)
    }
}

#[derive(Debug, Clone)]
pub struct PostSelectionRecord {
    pub outcome: BellOutcome,
    pub probability: f64,
    /// Remaining registers after `S′` and `X` are discarded, correction
    /// applied. `None` for impossible outcomes.
    pub state: Option<DensityOperator>,
}

impl PostSelectionRecord {
    pub fn success(&self) -> bool {
        self.outcome.is_success()
    }
}

fn check_registers(state: &DensityOperator, regs: [&str; 3]) -> Result<()> {
    for r in regs {
        if state.layout().register(r)?.qubits != 1 {
            return Err(Error::InvalidLayout(format!("register `{r}` must be a single qubit")));
        }
    }
    if regs[0] == regs[1] || regs[1] == regs[2] || regs[0] == regs[2] {
        return Err(Error::InvalidLayout("post-selection registers must be distinct".into()));
    }
    Ok(())
}

/// Runs the procedure on registers `(s, s_prime, x)` of `state`.
pub fn post_selection(
    state: &DensityOperator,
    s: &str,
    s_prime: &str,
    x: &str,
    sampling: Sampling<'_>,
) -> Result<Vec<PostSelectionRecord>> {
    check_registers(state, [s, s_prime, x])?;
    let bell = ProjectiveMeasurement::bell([s_prime, x])?;
    let x_gate = make_gate(Gate::X)?;
    measure(state, &bell, sampling)?
        .into_iter()
        .map(|rec| {
            let outcome = BellOutcome::ALL[rec.index];
            let state = match rec.post_state {
                None => None,
                Some(post) => {
                    let mut rho = post.to_density().trace_out(&[s_prime, x])?;
                    if outcome == BellOutcome::PsiPlus {
                        rho = rho.apply_unitary(&x_gate, &[s])?;
                    }
                    Some(rho)
                }
            };
            Ok(PostSelectionRecord { outcome, probability: rec.probability, state })
        })
        .collect()
}

/// `Tr((I ⊗ Π₊) ρ)` with `Π₊` on `(s_prime, x)`.
pub fn postsel_success_prob(state: &DensityOperator, s: &str, s_prime: &str, x: &str) -> Result<f64> {
    check_registers(state, [s, s_prime, x])?;
    Ok(state.expectation(&BellSubspaces::new().pi_plus, &[s_prime, x])?.re)
}
