//! The honest prover is accepted with certainty.

use epr_verifier::protocol::{honest_proof, make_scrambled_toy_verifier, make_toy_verifier, verifier_w_exact};
use epr_verifier::Result;

fn main() -> Result<()> {
    for l in [2, 3] {
        for i in 0..=10 {
            let p = 0.5 + 0.05 * i as f64;
            let v = make_toy_verifier(p, 1, 1)?;
            let r = verifier_w_exact(&honest_proof(&v, l)?, &v)?;
            println!("l={l} p={p:.2}  accept {:.12}", r.accept_probability);
        }
    }
    let v = make_scrambled_toy_verifier(0.8, 2, 1, 11)?;
    let r = verifier_w_exact(&honest_proof(&v, 2)?, &v)?;
    println!("scrambled 2-qubit toy: accept {:.12}  branches {:?}", r.accept_probability, r.branches);
    Ok(())
}
