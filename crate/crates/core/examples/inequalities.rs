//! Randomized checks of the distance and fidelity inequalities.

use epr_verifier::harness::run_lemma_suite;
use epr_verifier::Result;

fn main() -> Result<()> {
    for m in run_lemma_suite(300, 9, 1e-9)? {
        println!("{:28} checks {}  worst margin {:+.3e}  violations {}", m.name, m.checks, m.worst_margin, m.violations);
    }
    Ok(())
}
