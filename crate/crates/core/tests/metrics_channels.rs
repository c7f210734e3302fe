mod support;

use epr_verifier::channels::{bell_basis, choi_operator, choi_state, pinch_phi, pinch_registers};
use epr_verifier::kernel::{make_gate, DensityOperator, Gate, RegisterLayout, StateVector, TrialRng};
use epr_verifier::linalg::{self, ComplexMatrix};
use epr_verifier::metrics::{self, fidelity, pure_fidelity, pure_trace_distance, state_distance, trace_distance};
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

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

#[test]
fn bell_states_in_hadamard_basis() {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let plus = [c(h), c(h)];
    let minus = [c(h), c(-h)];
    let pp = linalg::tensor_vec(&plus, &plus);
    let mm = linalg::tensor_vec(&minus, &minus);
    let bell = bell_basis();
    let phi: Vec<Complex64> = pp.iter().zip(&mm).map(|(a, b)| (a + b) * h).collect();
    let psi: Vec<Complex64> = pp.iter().zip(&mm).map(|(a, b)| (a - b) * h).collect();
    for (x, y) in bell[0].amplitudes().iter().zip(&phi) {
        assert!((x - y).norm() < 1e-15);
    }
    for (x, y) in bell[2].amplitudes().iter().zip(&psi) {
        assert!((x - y).norm() < 1e-15);
    }
    for i in 0..4 {
        for j in 0..4 {
            let ip = bell[i].inner(&bell[j]).unwrap().norm();
            assert!((ip - if i == j { 1.0 } else { 0.0 }).abs() < 1e-15);
        }
    }
}

#[test]
fn choi_and_wb_identities_on_grid() {
    let wb = make_gate(Gate::Wb).unwrap();
    for k in 0..=10 {
        let q = k as f64 / 10.0;
        let r = make_gate(Gate::R(q)).unwrap();
        let choi = choi_state(&r.adjoint()).unwrap();
        for keep in ["S", "S'"] {
            let m = choi.reduced(&[keep]).unwrap();
            assert!(m.matrix().max_abs_diff(&ComplexMatrix::identity(2).scale_real(0.5)) < 1e-12);
        }
        let mapped = wb.apply(choi.amplitudes());
        let expect = linalg::tensor_vec(&r.apply(&[c(1.0), c(0.0)]), &[c(1.0), c(0.0)]);
        for (x, y) in mapped.iter().zip(&expect) {
            assert!((x - y).norm() < 1e-12);
        }
        let rho = choi.density();
        assert!(pinch_phi(rho.matrix()).unwrap().max_abs_diff(rho.matrix()) < 1e-12);
    }
}

#[test]
fn pinch_choi_operator_is_a_state() {
    let layout = RegisterLayout::qubits(["o0", "o1", "r0", "r1"]).unwrap();
    let j = choi_operator(pinch_phi, 4, layout).unwrap();
    assert!((j.trace() - 1.0).abs() < 1e-12);
    let ev = support::jacobi_eigenvalues(&dense(j.matrix()));
    assert!(ev.iter().all(|&x| x > -1e-12), "{ev:?}");
}

#[test]
fn additive_perturbation_bound_at_trace_three_tenths() {
    let mut rng = TrialRng::new(2, 0);
    for _ in 0..100 {
        let a = random::random_density(&mut rng, qubits(2), None);
        let b = random::random_psd(&mut rng, 4, 2);
        let b = b.scale_real(0.3 / b.trace().re);
        let d = trace_distance(&(a.matrix() + &b), a.matrix()).unwrap();
        assert!(d <= 0.15 + 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distance_agrees_with_oracle_and_is_a_metric(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = TrialRng::new(seed, 0);
        let (a, b, cc) = (
            random::random_density(&mut rng, qubits(n), None),
            random::random_density(&mut rng, qubits(n), Some(1)),
            random::random_density(&mut rng, qubits(n), Some(2.min(1 << n))),
        );
        let d_ab = state_distance(&a, &b).unwrap();
        prop_assert!((d_ab - support::trace_distance(&dense(a.matrix()), &dense(b.matrix()))).abs() < 1e-9);
        prop_assert!((d_ab - state_distance(&b, &a).unwrap()).abs() < 1e-12);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&d_ab));
        prop_assert!(metrics::triangle_margin(a.matrix(), b.matrix(), cc.matrix()).unwrap() >= -1e-9);
    }

    #[test]
    fn monotone_under_channels(seed in any::<u64>(), n in 2usize..=4) {
        let mut rng = TrialRng::new(seed, 1);
        let rho = random::random_density(&mut rng, qubits(n), None);
        let sigma = random::random_density(&mut rng, qubits(n), None);
        let u = random::haar_unitary(&mut rng, 1 << n);
        let names: Vec<String> = (0..n).map(|i| format!("q{i}")).collect();
        let checks = [
            metrics::monotonicity_margin(&rho, &sigma, |x| x.trace_out(&["q1"])).unwrap(),
            metrics::monotonicity_margin(&rho, &sigma, |x| pinch_registers(x, "q0", "q1")).unwrap(),
            metrics::monotonicity_margin(&rho, &sigma, |x| x.apply_unitary(&u, &names)).unwrap(),
        ];
        prop_assert!(checks.iter().all(|&m| m >= -1e-9), "{checks:?}");
    }

    #[test]
    fn fidelity_properties(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = TrialRng::new(seed, 2);
        let rho = random::random_density(&mut rng, qubits(n), None);
        let sigma = random::random_density(&mut rng, qubits(n), None);
        let f = fidelity(&rho, &sigma).unwrap();
        prop_assert!((f - fidelity(&sigma, &rho).unwrap()).abs() < 1e-9);
        prop_assert!((-1e-12..=1.0 + 1e-9).contains(&f));
        let (lo, hi) = metrics::fvg_margins(&rho, &sigma).unwrap();
        prop_assert!(lo >= -1e-9 && hi >= -1e-9);

        let phi = random::random_pure_state(&mut rng, qubits(n));
        let pf = pure_fidelity(&phi, &sigma).unwrap();
        prop_assert!((pf - fidelity(&phi.density(), &sigma).unwrap()).abs() < 1e-7);
    }

    #[test]
    fn pure_distance_matches_projectors(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = TrialRng::new(seed, 3);
        let phi = random::random_pure_state(&mut rng, qubits(n));
        let psi = random::random_pure_state(&mut rng, qubits(n));
        let d = pure_trace_distance(&phi, &psi).unwrap();
        prop_assert!((d - state_distance(&phi.density(), &psi.density()).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn pinch_is_an_idempotent_channel(seed in any::<u64>()) {
        let mut rng = TrialRng::new(seed, 4);
        let a = random::ginibre(&mut rng, 4, 4);
        let once = pinch_phi(&a).unwrap();
        prop_assert!(pinch_phi(&once).unwrap().max_abs_diff(&once) < 1e-12);
        prop_assert!((once.trace() - a.trace()).norm() < 1e-12);

        let h = random::random_hermitian(&mut rng, 4);
        prop_assert!(pinch_phi(&h).unwrap().hermitian_deviation() < 1e-12);

        let rho = random::random_density(&mut rng, qubits(2), None);
        let out = DensityOperator::new(qubits(2), pinch_phi(rho.matrix()).unwrap());
        prop_assert!(out.is_ok());
    }

    #[test]
    fn choi_marginals_are_maximally_mixed(seed in any::<u64>()) {
        let mut rng = TrialRng::new(seed, 5);
        let u = random::haar_unitary(&mut rng, 2);
        let choi: StateVector = choi_state(&u).unwrap();
        for keep in ["S", "S'"] {
            let m = choi.reduced(&[keep]).unwrap();
            prop_assert!(m.matrix().max_abs_diff(&ComplexMatrix::identity(2).scale_real(0.5)) < 1e-12);
        }
    }
}
