//! Distance measures and signed inequality margins.
//!
//! Every inequality helper returns `right side − left side`, so a margin
//! `≥ −tol` means the inequality holds at that tolerance and the most
//! negative margin over a batch is the worst case.

use crate::error::{Error, Result};
use crate::kernel::{DensityOperator, StateVector};
use crate::linalg::{self, ComplexMatrix};

/// `½‖A − B‖₁`
pub fn trace_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    a.ensure_square()?;
    a.ensure_same_shape(b)?;
    Ok(0.5 * linalg::trace_norm(&(a - b))?)
}

pub fn state_distance(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    trace_distance(rho.matrix(), sigma.matrix())
}

/// `√(1 − |⟨φ|ψ⟩|²)` for unit vectors.
pub fn pure_trace_distance(phi: &StateVector, psi: &StateVector) -> Result<f64> {
    let overlap = phi.inner(psi)?.norm_sqr();
    Ok((1.0 - overlap).max(0.0).sqrt())
}

/// `‖√ρ √σ‖₁`
pub fn fidelity(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    fidelity_matrices(rho.matrix(), sigma.matrix())
}

pub fn fidelity_matrices(rho: &ComplexMatrix, sigma: &ComplexMatrix) -> Result<f64> {
    rho.ensure_same_shape(sigma)?;
    let product = linalg::sqrt_psd(rho)?.matmul(&linalg::sqrt_psd(sigma)?);
    Ok(linalg::singular_values(&product)?.iter().sum())
}

/// `√⟨φ|σ|φ⟩`, the fidelity against a pure state.
pub fn pure_fidelity(phi: &StateVector, sigma: &DensityOperator) -> Result<f64> {
    let v = phi.amplitudes();
    if v.len() != sigma.matrix().rows() {
        return Err(Error::DimensionMismatch { expected: sigma.matrix().rows(), found: v.len() });
    }
    let sv = sigma.matrix().apply(v);
    Ok(linalg::inner(v, &sv).re.max(0.0).sqrt())
}

/// Fuchs–van de Graaf margins `(F − (1 − D), √(1 − D²) − F)`.
pub fn fvg_margins(rho: &DensityOperator, sigma: &DensityOperator) -> Result<(f64, f64)> {
    let d = state_distance(rho, sigma)?;
    let f = fidelity(rho, sigma)?;
    Ok((f - (1.0 - d), (1.0 - d * d).max(0.0).sqrt() - f))
}

/// Gentle-measurement margin
/// `F(ρ, (I−Π)ρ(I−Π)/Tr(ρ(I−Π)))² − (1 − Tr(ρΠ))`.
pub fn gentle_margin(rho: &DensityOperator, proj: &ComplexMatrix) -> Result<f64> {
    let m = rho.matrix();
    m.ensure_same_shape(proj)?;
    let dev = proj.projector_deviation();
    if dev > linalg::STRUCTURE_TOL {
        return Err(Error::NotProjector(dev));
    }
    let hit = proj.trace_product(m).re;
    if hit >= 1.0 - 1e-12 {
        return Err(Error::Precondition(format!("Tr(ρΠ) = {hit} leaves no weight outside the projector")));
    }
    let complement = &ComplexMatrix::identity(m.rows()) - proj;
    let post = complement.matmul(m).matmul(&complement);
    let post = post.scale_real(1.0 / post.trace().re).hermitian_part();
    let f = fidelity_matrices(m, &post)?;
    Ok(f * f - (1.0 - hit))
}

/// `ε/2 − D(A + B, A)` for PSD `B` with `Tr B ≤ ε`.
pub fn additive_perturbation_margin(a: &ComplexMatrix, b: &ComplexMatrix, eps: f64) -> Result<f64> {
    a.ensure_same_shape(b)?;
    if eps.is_nan() || eps < 0.0 {
        return Err(Error::Precondition(format!("ε = {eps} must be non-negative")));
    }
    let spectrum = linalg::eigh(b)?;
    if spectrum.eigenvalues.last().copied().unwrap_or(0.0) < -linalg::STRUCTURE_TOL {
        return Err(Error::Precondition("B must be positive semidefinite".into()));
    }
    let tr = b.trace().re;
    if tr > eps + linalg::STRUCTURE_TOL {
        return Err(Error::Precondition(format!("Tr B = {tr} exceeds ε = {eps}")));
    }
    Ok(0.5 * eps - trace_distance(&(a + b), a)?)
}

/// `ε − D((1−ε)ρ + εσ, ρ)` for density operators and `ε ∈ [0, 1)`.
pub fn mixture_perturbation_margin(rho: &DensityOperator, sigma: &DensityOperator, eps: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&eps) {
        return Err(Error::Precondition(format!("ε = {eps} must lie in [0, 1)")));
    }
    let mixed = &rho.matrix().scale_real(1.0 - eps) + &sigma.matrix().scale_real(eps);
    Ok(eps - trace_distance(&mixed, rho.matrix())?)
}

/// `‖A‖₁·‖B‖∞ − |Tr(B†A)|`
pub fn holder_margin(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    a.ensure_same_shape(b)?;
    let lhs = b.adjoint().trace_product(a).norm();
    Ok(linalg::trace_norm(a)? * linalg::operator_norm(b)? - lhs)
}

/// `D(A, C) + D(C, B) − D(A, B)`
pub fn triangle_margin(a: &ComplexMatrix, b: &ComplexMatrix, c: &ComplexMatrix) -> Result<f64> {
    Ok(trace_distance(a, c)? + trace_distance(c, b)? - trace_distance(a, b)?)
}

/// `D(ρ, σ) − D(Φ(ρ), Φ(σ))` for a channel `Φ`.
pub fn monotonicity_margin<F>(rho: &DensityOperator, sigma: &DensityOperator, channel: F) -> Result<f64>
where
    F: Fn(&DensityOperator) -> Result<DensityOperator>,
{
    let before = state_distance(rho, sigma)?;
    let after = state_distance(&channel(rho)?, &channel(sigma)?)?;
    Ok(before - after)
}
