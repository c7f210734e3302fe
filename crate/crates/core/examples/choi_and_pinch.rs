//! Choi states of `R(q)†` and the pinching map onto the Bell subspaces.

use epr_verifier::channels::{choi_state, pinch_registers, BellSubspaces};
use epr_verifier::kernel::{make_gate, Gate};
use epr_verifier::metrics::state_distance;
use epr_verifier::Result;

fn main() -> Result<()> {
    let subspaces = BellSubspaces::new();
    for q in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let r_dag = make_gate(Gate::R(q))?.adjoint();
        let choi = choi_state(&r_dag)?;
        let rho = choi.density();
        let plus = rho.expectation(&subspaces.pi_plus, &["S", "S'"])?.re;
        let pinched = pinch_registers(&rho, "S", "S'")?;
        let moved = state_distance(&rho, &pinched)?;

        // W_B sends the Choi state to (R(q)|0⟩) ⊗ |0⟩
        let mapped = choi.apply_unitary(&make_gate(Gate::Wb)?, &["S", "S'"])?;
        let a = mapped.amplitudes();
        println!("q={q:.2}  Tr(Π₊ρ)={plus:.3}  D(ρ, pinched)={moved:.3}  W_B amplitudes |00⟩ {:.3} |10⟩ {:.3}", a[0], a[2]);
    }
    Ok(())
}
