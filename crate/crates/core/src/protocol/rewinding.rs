//! The rewinding identity: if `ΔΠΔ|ω⟩ = ½|ω⟩` for projectors `Δ`, `Π`, then
//! `Δ(I − 2Π)Δ|ω⟩ = 0`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::{make_gate, Gate};
use crate::linalg::{self, ComplexMatrix, ONE};

use super::prover::honest_q;
use super::toy::ToyVerifier;

/// Allowed `‖ΔΠΔω − ½ω‖` before the precondition counts as violated.
pub const HALF_EIGEN_TOL: f64 = 1e-9;

/// `‖Δ(I − 2Π)Δ|ω⟩‖`
pub fn rewinding_residual(delta: &ComplexMatrix, pi: &ComplexMatrix, omega: &[Complex64]) -> Result<f64> {
    delta.ensure_same_shape(pi)?;
    for m in [delta, pi] {
        let dev = m.projector_deviation();
        if dev > linalg::STRUCTURE_TOL {
            return Err(Error::NotProjector(dev));
        }
    }
    if omega.len() != delta.rows() {
        return Err(Error::DimensionMismatch { expected: delta.rows(), found: omega.len() });
    }
    let norm = linalg::vec_norm(omega);
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidParameter(format!("ω must be a unit vector, norm {norm}")));
    }
    let d_omega = delta.apply(omega);
    let pd = pi.apply(&d_omega);
    let dpd = delta.apply(&pd);
    let gap: Vec<Complex64> = dpd.iter().zip(omega).map(|(a, b)| a - b * 0.5).collect();
    let gap = linalg::vec_norm(&gap);
    if gap > HALF_EIGEN_TOL {
        return Err(Error::Precondition(format!("ω is not a ½-eigenvector of ΔΠΔ (gap {gap:.3e})")));
    }
    // Δ(I − 2Π)Δω = Δω − 2ΔΠΔω
    let out: Vec<Complex64> = delta.apply(&d_omega).iter().zip(&dpd).map(|(a, b)| a - b * 2.0).collect();
    Ok(linalg::vec_norm(&out))
}

/// `Δ`, `Π` and `ω` for the honest prover against a toy verifier, on
/// `P ⊗ A ⊗ S` with `S` one qubit.
#[derive(Debug, Clone)]
pub struct RewindingInstance {
    pub delta: ComplexMatrix,
    pub pi: ComplexMatrix,
    pub omega: Vec<Complex64>,
    pub q: f64,
    pub p_x: f64,
}

impl RewindingInstance {
    pub fn residual(&self) -> Result<f64> {
        rewinding_residual(&self.delta, &self.pi, &self.omega)
    }

    /// Top eigenvalue of `ΔΠΔ`.
    pub fn top_eigenvalue(&self) -> Result<f64> {
        let dpd = self.delta.matmul(&self.pi).matmul(&self.delta).hermitian_part();
        Ok(linalg::max_eigpair(&dpd)?.0)
    }
}

/// `Δ = I_P ⊗ |0̄⟩⟨0̄|_{A,S}`, `Π = V†Π_acc V ⊗ R(q)†|1⟩⟨1|R(q)`,
/// `ω ⊗ |0̄⟩ ⊗ |0⟩`.
pub fn honest_rewinding(v: &ToyVerifier) -> Result<RewindingInstance> {
    let (p_x, omega) = v.witness()?;
    let q = honest_q(p_x);
    let dp = 1usize << v.p_qubits();
    let das = 2usize << v.a_qubits();
    let mut zero = ComplexMatrix::zeros(das, das);
    zero[(0, 0)] = ONE;
    let delta = linalg::tensor(&ComplexMatrix::identity(dp), &zero);

    let accept = v.v().adjoint().matmul(v.acc_projector()).matmul(v.v());
    let r = make_gate(Gate::R(q))?;
    let mut one = ComplexMatrix::zeros(2, 2);
    one[(1, 1)] = ONE;
    let rotated = r.adjoint().matmul(&one).matmul(&r);
    let pi = linalg::tensor(&accept, &rotated).hermitian_part();

    let mut tail = vec![Complex64::new(0.0, 0.0); das];
    tail[0] = ONE;
    let omega = linalg::tensor_vec(omega.amplitudes(), &tail);
    Ok(RewindingInstance { delta, pi, omega, q, p_x })
}
