//! SWAP test circuit against the `(1 + Tr ρσ)/2` formula.

use epr_verifier::kernel::{RegisterLayout, TrialRng};
use epr_verifier::protocol::{swap_accept_probability, swap_formula};
use epr_verifier::random::random_density;
use epr_verifier::Result;

fn main() -> Result<()> {
    let mut rng = TrialRng::new(7, 0);
    for n in [1, 2] {
        let xs: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let ys: Vec<String> = (0..n).map(|i| format!("y{i}")).collect();
        for rank in 1..=2 {
            let rho = random_density(&mut rng, RegisterLayout::qubits(xs.clone())?, Some(rank));
            let sigma = random_density(&mut rng, RegisterLayout::qubits(ys.clone())?, Some(rank));
            let r1: Vec<&str> = xs.iter().map(String::as_str).collect();
            let r2: Vec<&str> = ys.iter().map(String::as_str).collect();
            let circuit = swap_accept_probability(&rho.tensor(&sigma)?, &r1, &r2)?;
            let formula = swap_formula(rho.matrix(), sigma.matrix())?;
            println!("dim {}  rank {rank}  circuit {circuit:.12}  formula {formula:.12}", 1 << n);
        }
    }
    let rho = random_density(&mut rng, RegisterLayout::qubits(["x"])?, Some(1));
    let same = rho.tensor(&rho.relabel(RegisterLayout::qubits(["y"])?)?)?;
    println!("identical pure states: {:.12}", swap_accept_probability(&same, &["x"], &["y"])?);
    Ok(())
}
