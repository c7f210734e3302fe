//! Choi states of single-qubit unitaries and the Bell-subspace pinching map.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::gates::bell_vectors;
use crate::kernel::{DensityOperator, RegisterLayout, StateVector};
use crate::linalg::{self, ComplexMatrix, ONE};

/// Projectors onto `span{Φ⁺, Ψ⁺}` and `span{Φ⁻, Ψ⁻}`.
#[derive(Debug, Clone)]
pub struct BellSubspaces {
    pub pi_plus: ComplexMatrix,
    pub pi_minus: ComplexMatrix,
}

impl BellSubspaces {
    pub fn new() -> Self {
        let [phi_p, phi_m, psi_p, psi_m] = bell_vectors();
        let sum = |a: &[Complex64], b: &[Complex64]| &ComplexMatrix::projector_onto(a) + &ComplexMatrix::projector_onto(b);
        Self { pi_plus: sum(&phi_p, &psi_p), pi_minus: sum(&phi_m, &psi_m) }
    }
}

impl Default for BellSubspaces {
    fn default() -> Self {
        Self::new()
    }
}

/// The four Bell states on registers `a`, `b`, ordered `Φ⁺, Φ⁻, Ψ⁺, Ψ⁻`.
pub fn bell_basis_on(a: &str, b: &str) -> Vec<StateVector> {
    let layout = RegisterLayout::qubits([a, b]).expect("distinct register names");
    bell_vectors().into_iter().map(|v| StateVector::new(layout.clone(), v.to_vec()).expect("unit vector")).collect()
}

pub fn bell_basis() -> Vec<StateVector> {
    bell_basis_on("a", "b")
}

/// `(u ⊗ I)|Φ⁺⟩` on registers `(S, S′)`.
pub fn choi_state(u: &ComplexMatrix) -> Result<StateVector> {
    choi_state_on(u, "S", "S'")
}

pub fn choi_state_on(u: &ComplexMatrix, s: &str, s_prime: &str) -> Result<StateVector> {
    if u.rows() != 2 || u.cols() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: u.rows() });
    }
    let phi_plus = StateVector::new(RegisterLayout::qubits([s, s_prime])?, bell_vectors()[0].to_vec())?;
    phi_plus.apply_unitary(u, &[s])
}

/// `Π₊AΠ₊ + Π₋AΠ₋` on a 4×4 operator.
pub fn pinch_phi(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.rows() != 4 || a.cols() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, found: a.rows() });
    }
    let b = BellSubspaces::new();
    Ok(&b.pi_plus.matmul(a).matmul(&b.pi_plus) + &b.pi_minus.matmul(a).matmul(&b.pi_minus))
}

/// Applies the pinching map to the two-qubit block `(s, s_prime)` of `rho`.
pub fn pinch_registers(rho: &DensityOperator, s: &str, s_prime: &str) -> Result<DensityOperator> {
    for name in [s, s_prime] {
        if rho.layout().register(name)?.qubits != 1 {
            return Err(Error::InvalidLayout(format!("register `{name}` must be a single qubit")));
        }
    }
    let b = BellSubspaces::new();
    let plus = rho.conjugate(&b.pi_plus, &[s, s_prime])?;
    let minus = rho.conjugate(&b.pi_minus, &[s, s_prime])?;
    DensityOperator::mixture(&[(1.0, &plus), (1.0, &minus)])
}

/// Normalized Choi operator `(1/d) Σᵢⱼ Φ(|i⟩⟨j|) ⊗ |i⟩⟨j|` of a linear map on
/// `d × d` matrices, laid out as (output, reference).
pub fn choi_operator<F>(channel: F, d: usize, layout: RegisterLayout) -> Result<DensityOperator>
where
    F: Fn(&ComplexMatrix) -> Result<ComplexMatrix>,
{
    let mut out: Option<ComplexMatrix> = None;
    for i in 0..d {
        for j in 0..d {
            let mut unit = ComplexMatrix::zeros(d, d);
            unit[(i, j)] = ONE;
            let block = linalg::tensor(&channel(&unit)?, &unit);
            out = Some(match out {
                None => block,
                Some(acc) => {
                    acc.ensure_same_shape(&block)?;
                    &acc + &block
                }
            });
        }
    }
    let m = out.ok_or_else(|| Error::InvalidParameter("d must be positive".into()))?;
    DensityOperator::new(layout, m.scale_real(1.0 / d as f64))
}

/// Kraus form of the pinching map, for use as a generic channel.
pub fn pinch_kraus() -> [ComplexMatrix; 2] {
    let b = BellSubspaces::new();
    [b.pi_plus, b.pi_minus]
}
