mod support;

use epr_verifier::kernel::{
    make_gate, measure, symmetrize_pairs, DensityOperator, Gate, PairMode, ProjectiveMeasurement, RegisterLayout, Sampling,
    StateVector, TrialRng,
};
use epr_verifier::linalg::ComplexMatrix;
use epr_verifier::metrics::state_distance;
use epr_verifier::random;
use num_complex::Complex64;
use proptest::prelude::*;
use support::Dense;

fn dense(m: &ComplexMatrix) -> Dense {
    Dense::from_slice(m.rows(), m.data())
}

fn qubits(n: usize) -> RegisterLayout {
    RegisterLayout::qubits((0..n).map(|i| format!("q{i}"))).unwrap()
}

fn pairs(l: usize) -> Vec<(String, String)> {
    (1..=l).map(|i| (format!("S{i}"), format!("S{i}'"))).collect()
}

fn pair_layout(l: usize) -> RegisterLayout {
    RegisterLayout::qubits(pairs(l).into_iter().flat_map(|(a, b)| [a, b])).unwrap()
}

#[test]
fn r_at_one_is_minus_i_x() {
    let r = make_gate(Gate::R(1.0)).unwrap();
    let x = make_gate(Gate::X).unwrap();
    assert!(r.max_abs_diff(&x.scale(Complex64::new(0.0, -1.0))) < 1e-15);
}

#[test]
fn r_dagger_on_epr_half() {
    for k in 0..=10 {
        let q = k as f64 / 10.0;
        let epr = StateVector::new(RegisterLayout::qubits(["S", "S'"]).unwrap(), support::phi_plus().to_vec()).unwrap();
        let out = epr.apply_unitary(&make_gate(Gate::R(q)).unwrap().adjoint(), &["S"]).unwrap();
        let (a, b) = (Complex64::new((1.0 - q).sqrt(), 0.0), Complex64::new(0.0, q.sqrt()));
        let expect: Vec<Complex64> = support::phi_plus().iter().zip(support::psi_plus()).map(|(p, s)| a * p + b * s).collect();
        for (x, y) in out.amplitudes().iter().zip(&expect) {
            assert!((x - y).norm() < 1e-12);
        }
    }
}

#[test]
fn symmetrize_three_pairs_enumerates_orders() {
    let mut rng = TrialRng::new(5, 0);
    let two = RegisterLayout::qubits(["a", "b"]).unwrap();
    let sigma = random::random_density(&mut rng, two.clone(), None);
    let tau = random::random_density(&mut rng, two, None);
    let rename =
        |r: &DensityOperator, i: usize| r.relabel(RegisterLayout::qubits([format!("S{i}"), format!("S{i}'")]).unwrap()).unwrap();
    let state = rename(&sigma, 1).tensor(&rename(&tau, 2)).unwrap();
    let state = state.tensor(&rename(&sigma, 3)).unwrap();
    // pairs hold σ, τ, σ: ordered pairs (1,3),(3,1) give σσ; the other four mix σ and τ
    let out = symmetrize_pairs(&state, &pairs(3), PairMode::ExactAverage).unwrap().state;
    let st = rename(&sigma, 1).tensor(&rename(&tau, 2)).unwrap();
    let ts = rename(&tau, 1).tensor(&rename(&sigma, 2)).unwrap();
    let ss = rename(&sigma, 1).tensor(&rename(&sigma, 2)).unwrap();
    let expect = DensityOperator::mixture(&[(1.0 / 3.0, &ss), (1.0 / 3.0, &st), (1.0 / 3.0, &ts)]).unwrap();
    assert!(state_distance(&out, &expect).unwrap() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn unitary_sequences_keep_norm(seed in any::<u64>(), n in 1usize..=5, steps in 1usize..20) {
        let mut rng = TrialRng::new(seed, 0);
        let mut psi = random::random_pure_state(&mut rng, qubits(n));
        for k in 0..steps {
            let width = 1 + k % n.min(3);
            let start = (seed as usize + k) % (n - width + 1);
            let targets: Vec<String> = (start..start + width).map(|i| format!("q{i}")).collect();
            let u = random::haar_unitary(&mut rng, 1 << width);
            psi = psi.apply_unitary(&u, &targets).unwrap();
            prop_assert!((psi.norm() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn exhaustive_measurement_is_consistent(seed in any::<u64>(), n in 2usize..=4, bell in any::<bool>()) {
        let mut rng = TrialRng::new(seed, 1);
        let rho = random::random_density(&mut rng, qubits(n), None);
        let m = if bell {
            ProjectiveMeasurement::bell(["q0", "q1"]).unwrap()
        } else {
            ProjectiveMeasurement::standard_basis(["q1"], 1).unwrap()
        };
        let recs = measure(&rho, &m, Sampling::Exhaustive).unwrap();
        let total: f64 = recs.iter().map(|r| r.probability).sum();
        prop_assert!((total - 1.0).abs() < 1e-10);

        // Σ p_k ρ_k equals the Lüders-dephased state Σ Π_k ρ Π_k
        let mut mixed = Dense::zeros(rho.matrix().rows());
        let mut dephased = Dense::zeros(rho.matrix().rows());
        let targets: Vec<usize> = m.target().iter().map(|t| t[1..].parse().unwrap()).collect();
        for (rec, (_, proj)) in recs.iter().zip(m.projectors()) {
            if let Some(post) = &rec.post_state {
                mixed = mixed.add(&dense(post.to_density().matrix()).scale(rec.probability));
            }
            let full = support::embed(&dense(proj), n, &targets);
            dephased = dephased.add(&full.mul(&dense(rho.matrix())).mul(&full));
        }
        prop_assert!(support::trace_distance(&mixed, &dephased) < 1e-9);

        // for a state already diagonal in the measured basis nothing changes
        let diag: Vec<f64> = {
            let w: Vec<f64> = (0..1 << n).map(|_| rng.uniform()).collect();
            let s: f64 = w.iter().sum();
            w.into_iter().map(|x| x / s).collect()
        };
        if !bell {
            let classical = DensityOperator::new(qubits(n), ComplexMatrix::from_real_diagonal(&diag)).unwrap();
            let recs = measure(&classical, &m, Sampling::Exhaustive).unwrap();
            let parts: Vec<(f64, DensityOperator)> = recs.iter().filter_map(|r| r.post_state.as_ref().map(|p| (r.probability, p.to_density()))).collect();
            let refs: Vec<(f64, &DensityOperator)> = parts.iter().map(|(p, d)| (*p, d)).collect();
            prop_assert!(state_distance(&DensityOperator::mixture(&refs).unwrap(), &classical).unwrap() < 1e-9);
        }
    }

    #[test]
    fn symmetrized_state_is_swap_invariant(seed in any::<u64>(), l in 2usize..=3) {
        let mut rng = TrialRng::new(seed, 2);
        let rho = random::random_density(&mut rng, pair_layout(l), Some(2));
        let out = symmetrize_pairs(&rho, &pairs(l), PairMode::ExactAverage).unwrap().state;
        let swapped = out.relabel(RegisterLayout::qubits(["S2", "S2'", "S1", "S1'"]).unwrap()).unwrap();
        let swapped = swapped.partial_trace(&["S1", "S1'", "S2", "S2'"]).unwrap();
        prop_assert!(state_distance(&out, &swapped).unwrap() < 1e-10);
    }
}

#[test]
fn sampled_frequencies_match_exhaustive() {
    let mut rng = TrialRng::new(9, 0);
    let rho = random::random_density(&mut rng, qubits(3), None);
    let m = ProjectiveMeasurement::bell(["q2", "q0"]).unwrap();
    let exact: Vec<f64> = measure(&rho, &m, Sampling::Exhaustive).unwrap().iter().map(|r| r.probability).collect();
    let n = 20_000;
    let mut counts = [0usize; 4];
    for t in 0..n {
        let mut r = TrialRng::new(11, t);
        counts[measure(&rho, &m, Sampling::Sampled(&mut r)).unwrap()[0].index] += 1;
    }
    for (c, p) in counts.iter().zip(exact) {
        let f = *c as f64 / n as f64;
        assert!((f - p).abs() <= 5.0 * (p * (1.0 - p) / n as f64).sqrt(), "{f} vs {p}");
    }
}
