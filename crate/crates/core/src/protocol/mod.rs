//! Toy verifiers, provers, and the verifier's building blocks.

pub mod postselect;
pub mod prover;
pub mod rewinding;
pub mod swap;
pub mod toy;
pub mod verifier;

pub use postselect::{post_selection, postsel_success_prob, BellOutcome, PostSelectionRecord};
pub use prover::{cheating_proof, honest_proof, validate_marginal, ProtocolState, ProverStrategy, StrategyKind};
pub use rewinding::{honest_rewinding, rewinding_residual, RewindingInstance};
pub use swap::{swap_accept_probability, swap_formula, swap_formula_joint, swap_test};
pub use toy::{make_scrambled_toy_verifier, make_toy_verifier, ToyVerifier};
pub use verifier::{
    verifier_w, verifier_w_exact, verifier_w_pair, Branch, BranchBreakdown, ExactResult, RunOutcome, SampledVerifier, Verdict,
    VerifierMode, VerifierOutput,
};
