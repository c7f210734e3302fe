//! Gate library, Bell basis and projective measurement.

use epr_verifier::channels::bell_basis_on;
use epr_verifier::kernel::{make_gate, measure, Gate, ProjectiveMeasurement, RegisterLayout, Sampling, StateVector, TrialRng};
use epr_verifier::Result;

fn main() -> Result<()> {
    for (name, g) in [("H", Gate::H), ("R(0.3)", Gate::R(0.3)), ("W_B", Gate::Wb), ("CSWAP", Gate::Cswap)] {
        let m = make_gate(g)?;
        println!("{name:7} {}x{}  unitary deviation {:.1e}", m.rows(), m.cols(), m.unitary_deviation());
    }

    let bell = bell_basis_on("x", "y");
    let labels = ["phi+", "phi-", "psi+", "psi-"];
    for (label, b) in labels.iter().zip(&bell) {
        let wb = b.apply_unitary(&make_gate(Gate::Wb)?, &["x", "y"])?;
        let k = wb.amplitudes().iter().position(|a| a.norm() > 0.5).unwrap();
        println!("W_B |{label}⟩ = ±|{k:02b}⟩");
    }

    let layout = RegisterLayout::qubits(["x", "y"])?;
    let plus = StateVector::basis(layout, 0)?.apply_unitary(&make_gate(Gate::H)?, &["x"])?;
    let m = ProjectiveMeasurement::bell(["x", "y"])?;
    for rec in measure(&plus, &m, Sampling::Exhaustive)? {
        println!("P({}) = {:.3}", rec.label, rec.probability);
    }
    let mut rng = TrialRng::new(42, 0);
    let drawn = measure(&plus, &m, Sampling::Sampled(&mut rng))?;
    println!("sampled outcome: {}", drawn[0].label);
    Ok(())
}
