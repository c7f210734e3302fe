//! Toy verifiers with a known maximum acceptance probability.
//!
//! `V` acts on `P ⊗ A`. The acceptance qubit is the first qubit of `A`, so
//! `Π_acc = I_P ⊗ |1⟩⟨1| ⊗ I`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::gates::y_rotation;
use crate::kernel::{RegisterLayout, StateVector, TrialRng};
use crate::linalg::{self, ComplexMatrix, ONE, STRUCTURE_TOL};
use crate::random::haar_unitary;

/// Tolerance on the top eigenvalue of `M` against `target_p`.
pub const TARGET_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct ToyVerifier {
    v: ComplexMatrix,
    p_qubits: usize,
    a_qubits: usize,
    acc_projector: ComplexMatrix,
    target_p: f64,
}

impl ToyVerifier {
    /// Wraps an arbitrary unitary `v` on `P ⊗ A` and checks that the top
    /// eigenvalue of its acceptance operator is `target_p`.
    pub fn new(v: ComplexMatrix, p_qubits: usize, a_qubits: usize, target_p: f64) -> Result<Self> {
        if p_qubits == 0 || a_qubits == 0 {
            return Err(Error::InvalidParameter("P and A need at least one qubit each".into()));
        }
        let d = 1usize << (p_qubits + a_qubits);
        if v.rows() != d || v.cols() != d {
            return Err(Error::DimensionMismatch { expected: d, found: v.rows() });
        }
        let dev = v.unitary_deviation();
        if dev > STRUCTURE_TOL {
            return Err(Error::NotUnitary(dev));
        }
        check_p(target_p)?;
        let toy = Self { v, p_qubits, a_qubits, acc_projector: acceptance_projector(p_qubits, a_qubits), target_p };
        let (top, _) = linalg::max_eigpair(&toy.accept_operator())?;
        if (top - target_p).abs() > TARGET_TOL {
            return Err(Error::InvalidParameter(format!("acceptance operator has top eigenvalue {top}, expected {target_p}")));
        }
        Ok(toy)
    }

    pub fn v(&self) -> &ComplexMatrix {
        &self.v
    }

    pub fn p_qubits(&self) -> usize {
        self.p_qubits
    }

    pub fn a_qubits(&self) -> usize {
        self.a_qubits
    }

    pub fn acc_projector(&self) -> &ComplexMatrix {
        &self.acc_projector
    }

    pub fn target_p(&self) -> f64 {
        self.target_p
    }

    /// `M = (I ⊗ ⟨0̄|) V† Π_acc V (I ⊗ |0̄⟩)` on `P`.
    pub fn accept_operator(&self) -> ComplexMatrix {
        let dp = 1usize << self.p_qubits;
        let da = 1usize << self.a_qubits;
        // columns V|i, 0̄⟩ projected onto acceptance
        let cols: Vec<Vec<Complex64>> = (0..dp)
            .map(|i| {
                let col: Vec<Complex64> = (0..dp * da).map(|r| self.v[(r, i * da)]).collect();
                self.acc_projector.apply(&col)
            })
            .collect();
        let mut m = ComplexMatrix::zeros(dp, dp);
        for i in 0..dp {
            for j in 0..dp {
                m[(i, j)] = linalg::inner(&cols[i], &cols[j]);
            }
        }
        m.hermitian_part()
    }

    /// Top eigenvalue and eigenvector of `M`, the best single-copy witness.
    pub fn witness(&self) -> Result<(f64, StateVector)> {
        let (p, v) = linalg::max_eigpair(&self.accept_operator())?;
        Ok((p, StateVector::new(self.p_layout(), v)?))
    }

    pub fn p_layout(&self) -> RegisterLayout {
        RegisterLayout::new([("P", self.p_qubits)]).expect("valid layout")
    }

    /// `I − 2 Π_acc ⊗ |1⟩⟨1|` on `(P, A, S)` with `S` one qubit.
    pub fn phase_flip(&self) -> ComplexMatrix {
        let mut one = ComplexMatrix::zeros(2, 2);
        one[(1, 1)] = ONE;
        let d = 2usize << (self.p_qubits + self.a_qubits);
        &ComplexMatrix::identity(d) - &linalg::tensor(&self.acc_projector, &one).scale_real(2.0)
    }
}

fn check_p(p: f64) -> Result<()> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidParameter(format!("p must lie in (0, 1], got {p}")));
    }
    Ok(())
}

fn acceptance_projector(p_qubits: usize, a_qubits: usize) -> ComplexMatrix {
    let d = 1usize << (p_qubits + a_qubits);
    let acc_bit = 1usize << (a_qubits - 1);
    let diag: Vec<f64> = (0..d).map(|k| if k & acc_bit != 0 { 1.0 } else { 0.0 }).collect();
    ComplexMatrix::from_real_diagonal(&diag)
}

/// Controlled rotation: when `P = |1…1⟩`, rotate the acceptance qubit by
/// `R_y(2θ)` with `sin²θ = p`.
pub fn make_toy_verifier(p: f64, p_qubits: usize, a_qubits: usize) -> Result<ToyVerifier> {
    check_p(p)?;
    if p_qubits == 0 || a_qubits == 0 {
        return Err(Error::InvalidParameter("P and A need at least one qubit each".into()));
    }
    let theta = p.sqrt().asin();
    let rot = y_rotation(theta);
    let da = 1usize << a_qubits;
    let dp = 1usize << p_qubits;
    let d = dp * da;
    let acc_shift = a_qubits - 1;
    let mut v = ComplexMatrix::identity(d);
    let block = (dp - 1) * da;
    for rest in 0..da >> 1 {
        // rest spans the non-acceptance qubits of A
        let lo = rest & ((1 << acc_shift) - 1);
        let idx = |bit: usize| block + (bit << acc_shift) + lo;
        for (r, c) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            v[(idx(r), idx(c))] = rot[(r, c)];
        }
    }
    ToyVerifier::new(v, p_qubits, a_qubits, p)
}

/// `V·(U_P ⊗ I)` with `U_P` Haar-random, so the witness is no longer a basis
/// state.
pub fn make_scrambled_toy_verifier(p: f64, p_qubits: usize, a_qubits: usize, seed: u64) -> Result<ToyVerifier> {
    let base = make_toy_verifier(p, p_qubits, a_qubits)?;
    let mut rng = TrialRng::from_seed(seed);
    let u = haar_unitary(&mut rng, 1 << p_qubits);
    let v = base.v.matmul(&linalg::tensor(&u, &ComplexMatrix::identity(1 << a_qubits)));
    ToyVerifier::new(v, p_qubits, a_qubits, p)
}

/// `|0̄⟩` on `A`.
pub fn ancilla_zero(a_qubits: usize) -> StateVector {
    StateVector::zero(RegisterLayout::new([("A", a_qubits)]).expect("valid layout"))
}
