//! Teleporting `|φ⟩` through the Choi state of `R(q)†`: the success branches
//! carry `R(q)†|φ⟩`.

use epr_verifier::channels::choi_state_on;
use epr_verifier::kernel::Sampling;
use epr_verifier::kernel::{make_gate, Gate, RegisterLayout, TrialRng};
use epr_verifier::metrics::pure_fidelity;
use epr_verifier::protocol::{post_selection, postsel_success_prob};
use epr_verifier::random::random_pure_state;
use epr_verifier::Result;

fn main() -> Result<()> {
    let mut rng = TrialRng::new(3, 0);
    let q = 0.3;
    let r_dag = make_gate(Gate::R(q))?.adjoint();
    let phi = random_pure_state(&mut rng, RegisterLayout::qubits(["X"])?);
    let choi = choi_state_on(&r_dag, "S", "S'")?;
    let state = choi.tensor(&phi)?.density();

    println!("success probability {:.12}", postsel_success_prob(&state, "S", "S'", "X")?);
    let target = phi.apply_unitary(&r_dag, &["X"])?.relabel(RegisterLayout::qubits(["S"])?)?;
    for rec in post_selection(&state, "S", "S'", "X", Sampling::Exhaustive)? {
        let fid = match &rec.state {
            Some(rho) if rec.success() => format!("fidelity with R(q)†|φ⟩ {:.12}", pure_fidelity(&target, rho)?),
            _ => "discarded".to_string(),
        };
        println!("{:5} p={:.3}  {fid}", rec.outcome.label(), rec.probability);
    }
    Ok(())
}
