//! Named registers, tensor products and partial traces.

use epr_verifier::kernel::{make_gate, Gate, RegisterLayout, StateVector};
use epr_verifier::Result;

fn main() -> Result<()> {
    let layout = RegisterLayout::new([("a", 1), ("b", 2)])?;
    println!("layout {:?}: {} qubits, dim {}", layout.names().collect::<Vec<_>>(), layout.total_qubits(), layout.dim());

    // |1⟩_a ⊗ |01⟩_b is basis index 0b101 with the leftmost qubit most significant
    let psi = StateVector::basis(layout.clone(), 0b101)?;
    let h = make_gate(Gate::H)?;
    let psi = psi.apply_unitary(&h, &["a"])?;
    for (k, amp) in psi.amplitudes().iter().enumerate() {
        if amp.norm() > 0.0 {
            println!("  |{k:03b}⟩  {amp:.4}");
        }
    }

    let rho_b = psi.reduced(&["b"])?;
    println!("reduced on b: trace {:.3}, purity {:.3}", rho_b.trace(), rho_b.purity());

    // entangle a with the first qubit of b and look at the marginal again
    let cnot = make_gate(Gate::Cnot)?;
    let split = psi.relabel(RegisterLayout::qubits(["a", "b0", "b1"])?)?;
    let ent = split.apply_unitary(&cnot, &["a", "b0"])?;
    let rho_a = ent.reduced(&["a"])?;
    println!("after CNOT the marginal on a has purity {:.3}", rho_a.purity());
    println!("{:?}", rho_a.matrix());
    Ok(())
}
