//! Cheating strategies against a toy verifier with tiny acceptance, exact and
//! sampled.

use epr_verifier::harness::{binomial_bound, run_trials};
use epr_verifier::protocol::{cheating_proof, make_toy_verifier, ProverStrategy, SampledVerifier, StrategyKind, Verdict};
use epr_verifier::Result;

fn main() -> Result<()> {
    let v = make_toy_verifier(1e-3, 1, 1)?;
    let strategies = [
        ("idle_epr", StrategyKind::IdleEpr),
        ("choi_product(0.9)", StrategyKind::ChoiProduct(0.9)),
        ("local_unitaries", StrategyKind::LocalUnitaries(5)),
    ];
    let trials = 20_000;
    for (name, kind) in strategies {
        let proof = cheating_proof(&ProverStrategy::new(kind), &v, 2)?;
        let cache = SampledVerifier::new(&proof, &v)?;
        let exact = cache.exact();
        let accepts = run_trials(&cache, 1, trials).iter().filter(|o| o.verdict == Verdict::Accept).count();
        let freq = accepts as f64 / trials as f64;
        println!(
            "{name:18} reject {:.6}  sampled accept {freq:.4} (exact {:.4} ± {:.4})",
            exact.reject_probability,
            exact.accept_probability,
            binomial_bound(exact.accept_probability, trials, 5.0)
        );
        let b = exact.branches;
        println!(
            "{:18} postsel-fail {:.4}  all-zero {:.4}  measured-accept {:.4}  swap {:.4}/{:.4}",
            "", b.b0_postsel_fail, b.b0_all_zero_reject, b.b0_measured_accept, b.b1_swap_accept, b.b1_swap_reject
        );
    }
    Ok(())
}
