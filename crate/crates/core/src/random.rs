//! Random matrices and states for property tests and cheating strategies.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::kernel::{DensityOperator, RegisterLayout, StateVector};
use crate::linalg::{self, ComplexMatrix};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// `d × d` matrix of i.i.d. standard complex Gaussians.
pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    let data = (0..rows * cols).map(|_| gaussian(rng)).collect();
    ComplexMatrix::from_vec(rows, cols, data).expect("shape matches")
}

/// Haar-distributed unitary by Gram–Schmidt on a Ginibre matrix.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, d: usize) -> ComplexMatrix {
    let g = ginibre(rng, d, d);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    for j in 0..d {
        let mut v: Vec<Complex64> = (0..d).map(|i| g[(i, j)]).collect();
        // two passes keep orthogonality at machine precision
        for _ in 0..2 {
            for c in &cols {
                let proj = linalg::inner(c, &v);
                for (x, y) in v.iter_mut().zip(c) {
                    *x -= proj * y;
                }
            }
        }
        let n = linalg::vec_norm(&v);
        v.iter_mut().for_each(|x| *x /= n);
        cols.push(v);
    }
    let mut u = ComplexMatrix::zeros(d, d);
    for (j, c) in cols.iter().enumerate() {
        for (i, &x) in c.iter().enumerate() {
            u[(i, j)] = x;
        }
    }
    u
}

pub fn random_pure_state<R: Rng + ?Sized>(rng: &mut R, layout: RegisterLayout) -> StateVector {
    let amps = (0..layout.dim()).map(|_| gaussian(rng)).collect();
    StateVector::normalized(layout, amps).expect("nonzero Gaussian vector")
}

/// Random positive semidefinite `G G†` of rank at most `rank`.
pub fn random_psd<R: Rng + ?Sized>(rng: &mut R, d: usize, rank: usize) -> ComplexMatrix {
    let g = ginibre(rng, d, rank.max(1));
    g.matmul(&g.adjoint()).hermitian_part()
}

/// Random density operator of the given rank (full rank when `None`).
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, layout: RegisterLayout, rank: Option<usize>) -> DensityOperator {
    let d = layout.dim();
    let m = random_psd(rng, d, rank.unwrap_or(d));
    let tr = m.trace().re;
    DensityOperator::new(layout, m.scale_real(1.0 / tr)).expect("normalized PSD")
}

/// Projector onto a random `rank`-dimensional subspace.
pub fn random_projector<R: Rng + ?Sized>(rng: &mut R, d: usize, rank: usize) -> ComplexMatrix {
    let u = haar_unitary(rng, d);
    let mut p = ComplexMatrix::zeros(d, d);
    for k in 0..rank.min(d) {
        let v: Vec<Complex64> = (0..d).map(|i| u[(i, k)]).collect();
        p = &p + &ComplexMatrix::projector_onto(&v);
    }
    p
}

/// Random Hermitian `(G + G†)/2`.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, d: usize) -> ComplexMatrix {
    ginibre(rng, d, d).hermitian_part()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::TrialRng;

    #[test]
    fn generated_objects_have_their_structure() {
        let mut rng = TrialRng::from_seed(5);
        for d in [2, 3, 8] {
            assert!(haar_unitary(&mut rng, d).is_unitary(1e-12));
            assert!(random_projector(&mut rng, d, d / 2).is_projector(1e-12));
            assert!(random_hermitian(&mut rng, d).is_hermitian(1e-15));
        }
        let rho = random_density(&mut rng, RegisterLayout::qubits(["a", "b"]).unwrap(), Some(2));
        assert!((rho.trace() - 1.0).abs() < 1e-12);
    }
}
