//! The honest rewinding instance: `ω` is a ½-eigenvector of `ΔΠΔ`.

use epr_verifier::protocol::{honest_rewinding, make_toy_verifier};
use epr_verifier::Result;

fn main() -> Result<()> {
    for i in 0..=10 {
        let p = 0.5 + 0.05 * i as f64;
        let inst = honest_rewinding(&make_toy_verifier(p, 1, 1)?)?;
        println!("p={p:.2}  q={:.4}  top eigenvalue {:.12}  residual {:.2e}", inst.q, inst.top_eigenvalue()?, inst.residual()?);
    }
    Ok(())
}
