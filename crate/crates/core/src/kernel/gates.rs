//! Fixed gate matrices.
//!
//! Global phases follow the displayed matrices literally. In particular
//! `R(1) = -i·X` rather than `X`, and `W_B` carries minus signs on the
//! `Ψ±` rows. Anything compared against these gates must use the same
//! conventions or the completeness identities stop holding.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, I, ONE, ZERO};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    H,
    X,
    Y,
    Z,
    Cnot,
    /// Control is the first qubit.
    Cswap,
    /// `[[√(1−q), −i√q], [−i√q, √(1−q)]]`, an x-axis rotation.
    R(f64),
    /// Bell-to-computational change of basis.
    Wb,
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

pub fn make_gate(gate: Gate) -> Result<ComplexMatrix> {
    let h = FRAC_1_SQRT_2;
    Ok(match gate {
        Gate::H => ComplexMatrix::from_rows(&[&[re(h), re(h)], &[re(h), re(-h)]]),
        Gate::X => ComplexMatrix::from_rows(&[&[ZERO, ONE], &[ONE, ZERO]]),
        Gate::Y => ComplexMatrix::from_rows(&[&[ZERO, -I], &[I, ZERO]]),
        Gate::Z => ComplexMatrix::from_rows(&[&[ONE, ZERO], &[ZERO, -ONE]]),
        Gate::Cnot => permutation(2, |i| if i & 0b10 != 0 { i ^ 0b01 } else { i }),
        Gate::Cswap => permutation(3, |i| {
            if i & 0b100 != 0 {
                let (a, b) = (i >> 1 & 1, i & 1);
                0b100 | b << 1 | a
            } else {
                i
            }
        }),
        Gate::R(q) => {
            if !(0.0..=1.0).contains(&q) || q.is_nan() {
                return Err(Error::InvalidParameter(format!("R(q) requires q in [0,1], got {q}")));
            }
            let c = re((1.0 - q).sqrt());
            let s = -I * q.sqrt();
            ComplexMatrix::from_rows(&[&[c, s], &[s, c]])
        }
        Gate::Wb => {
            let [phi_p, phi_m, psi_p, psi_m] = bell_vectors();
            let basis = |k: usize| {
                let mut v = [ZERO; 4];
                v[k] = ONE;
                v
            };
            // |00⟩⟨Φ⁺| − |10⟩⟨Ψ⁺| + |01⟩⟨Φ⁻| − |11⟩⟨Ψ⁻|
            let terms =
                [(basis(0b00), phi_p, 1.0), (basis(0b10), psi_p, -1.0), (basis(0b01), phi_m, 1.0), (basis(0b11), psi_m, -1.0)];
            let mut w = ComplexMatrix::zeros(4, 4);
            for (ket, bra, sign) in terms {
                w = &w + &ComplexMatrix::outer(&ket, &bra).scale_real(sign);
            }
            w
        }
    })
}

/// `R_y(2θ)` with `|0⟩ ↦ cos θ|0⟩ + sin θ|1⟩`.
pub fn y_rotation(theta: f64) -> ComplexMatrix {
    let (s, c) = theta.sin_cos();
    ComplexMatrix::from_rows(&[&[re(c), re(-s)], &[re(s), re(c)]])
}

/// Bell vectors in the order `Φ⁺, Φ⁻, Ψ⁺, Ψ⁻`.
pub fn bell_vectors() -> [[Complex64; 4]; 4] {
    let h = re(FRAC_1_SQRT_2);
    [[h, ZERO, ZERO, h], [h, ZERO, ZERO, -h], [ZERO, h, h, ZERO], [ZERO, h, -h, ZERO]]
}

fn permutation(n_qubits: usize, f: impl Fn(usize) -> usize) -> ComplexMatrix {
    let d = 1 << n_qubits;
    let mut m = ComplexMatrix::zeros(d, d);
    for i in 0..d {
        m[(f(i), i)] = ONE;
    }
    m
}
