//! Pure and mixed states over a [`RegisterLayout`].

use num_complex::Complex64;

use super::layout::{split_indices, LocalIndexer, RegisterLayout};
use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, ONE, STRUCTURE_TOL, ZERO};

/// Norm tolerance for state vectors and trace tolerance for density operators.
pub const STATE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    layout: RegisterLayout,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Validates length and unit norm (within [`STATE_TOL`]).
    pub fn new(layout: RegisterLayout, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != layout.dim() {
            return Err(Error::DimensionMismatch { expected: layout.dim(), found: amplitudes.len() });
        }
        let norm = linalg::vec_norm(&amplitudes);
        if (norm - 1.0).abs() > STATE_TOL {
            return Err(Error::Precondition(format!("state norm {norm} is not 1")));
        }
        Ok(Self { layout, amplitudes })
    }

    /// Normalizes the amplitudes before validating.
    pub fn normalized(layout: RegisterLayout, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = linalg::vec_norm(&amplitudes);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::Precondition("cannot normalize a zero vector".into()));
        }
        for a in &mut amplitudes {
            *a /= norm;
        }
        Self::new(layout, amplitudes)
    }

    pub(crate) fn from_parts_unchecked(layout: RegisterLayout, amplitudes: Vec<Complex64>) -> Self {
        debug_assert_eq!(layout.dim(), amplitudes.len());
        Self { layout, amplitudes }
    }

    pub fn basis(layout: RegisterLayout, index: usize) -> Result<Self> {
        let dim = layout.dim();
        if index >= dim {
            return Err(Error::InvalidParameter(format!("basis index {index} out of range for dimension {dim}")));
        }
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = ONE;
        Ok(Self { layout, amplitudes })
    }

    /// The all-zero string `|0…0⟩`.
    pub fn zero(layout: RegisterLayout) -> Self {
        Self::basis(layout, 0).expect("index 0 always valid")
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        linalg::vec_norm(&self.amplitudes)
    }

    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.amplitudes.len() != other.amplitudes.len() {
            return Err(Error::DimensionMismatch { expected: self.amplitudes.len(), found: other.amplitudes.len() });
        }
        Ok(linalg::inner(&self.amplitudes, &other.amplitudes))
    }

    /// `self ⊗ other` with the layouts concatenated.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            layout: self.layout.concat(&other.layout)?,
            amplitudes: linalg::tensor_vec(&self.amplitudes, &other.amplitudes),
        })
    }

    pub fn relabel(&self, layout: RegisterLayout) -> Result<Self> {
        if layout.dim() != self.layout.dim() {
            return Err(Error::DimensionMismatch { expected: self.layout.dim(), found: layout.dim() });
        }
        Ok(Self { layout, amplitudes: self.amplitudes.clone() })
    }

    /// Applies `u` to the named registers and the identity elsewhere.
    pub fn apply_unitary<S: AsRef<str>>(&self, u: &ComplexMatrix, targets: &[S]) -> Result<Self> {
        let qubits = self.layout.qubit_positions(targets)?;
        check_local_unitary(u, qubits.len())?;
        let mut out = self.clone();
        apply_local_vec(&mut out.amplitudes, self.layout.total_qubits(), &qubits, u);
        Ok(out)
    }

    /// Applies an arbitrary operator without unitarity or norm checks.
    pub(crate) fn apply_operator_unchecked(&self, op: &ComplexMatrix, qubits: &[usize]) -> Vec<Complex64> {
        let mut amps = self.amplitudes.clone();
        apply_local_vec(&mut amps, self.layout.total_qubits(), qubits, op);
        amps
    }

    pub fn density(&self) -> DensityOperator {
        DensityOperator { layout: self.layout.clone(), matrix: ComplexMatrix::projector_onto(&self.amplitudes) }
    }

    /// Reduced state on `keep`, ordered as given. Computed from the
    /// amplitudes without forming `|ψ⟩⟨ψ|`.
    pub fn reduced<S: AsRef<str>>(&self, keep: &[S]) -> Result<DensityOperator> {
        if keep.is_empty() {
            return Err(Error::InvalidParameter("partial trace must keep at least one register".into()));
        }
        let qubits = self.layout.qubit_positions(keep)?;
        let layout = self.layout.select(keep)?;
        let n = self.layout.total_qubits();
        let (kept, rest, n_rest) = split_indices(n, &qubits);
        let dk = layout.dim();
        let dr = 1usize << n_rest;
        // psi[k][r]
        let mut psi = vec![ZERO; dk * dr];
        for (i, a) in self.amplitudes.iter().enumerate() {
            psi[kept[i] * dr + rest[i]] = *a;
        }
        let mut m = ComplexMatrix::zeros(dk, dk);
        for a in 0..dk {
            let row_a = &psi[a * dr..(a + 1) * dr];
            for b in a..dk {
                let row_b = &psi[b * dr..(b + 1) * dr];
                let v: Complex64 = row_a.iter().zip(row_b).map(|(x, y)| x * y.conj()).sum();
                m[(a, b)] = v;
                m[(b, a)] = v.conj();
            }
        }
        Ok(DensityOperator { layout, matrix: m })
    }
}

/// Hermitian, PSD, unit-trace operator over a layout.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    layout: RegisterLayout,
    matrix: ComplexMatrix,
}

impl DensityOperator {
    /// Validates Hermiticity, positivity and unit trace, all within
    /// [`STATE_TOL`].
    pub fn new(layout: RegisterLayout, matrix: ComplexMatrix) -> Result<Self> {
        let dim = matrix.ensure_square()?;
        if dim != layout.dim() {
            return Err(Error::DimensionMismatch { expected: layout.dim(), found: dim });
        }
        validate_density(&matrix)?;
        Ok(Self { layout, matrix })
    }

    pub fn maximally_mixed(layout: RegisterLayout) -> Self {
        let d = layout.dim();
        Self { matrix: ComplexMatrix::identity(d).scale_real(1.0 / d as f64), layout }
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// `Tr(ρ²)`
    pub fn purity(&self) -> f64 {
        self.matrix.trace_product(&self.matrix).re
    }

    pub fn validate(&self) -> Result<()> {
        validate_density(&self.matrix)
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        Ok(Self { layout: self.layout.concat(&other.layout)?, matrix: linalg::tensor(&self.matrix, &other.matrix) })
    }

    pub fn relabel(&self, layout: RegisterLayout) -> Result<Self> {
        if layout.dim() != self.layout.dim() {
            return Err(Error::DimensionMismatch { expected: self.layout.dim(), found: layout.dim() });
        }
        Ok(Self { layout, matrix: self.matrix.clone() })
    }

    /// Convex combination `Σ wᵢ ρᵢ`. All inputs must share a layout.
    pub fn mixture(parts: &[(f64, &DensityOperator)]) -> Result<Self> {
        let (_, first) = parts.first().ok_or_else(|| Error::InvalidParameter("empty mixture".into()))?;
        let mut m = ComplexMatrix::zeros(first.matrix.rows(), first.matrix.cols());
        for (w, rho) in parts {
            if rho.layout != first.layout {
                return Err(Error::InvalidLayout("mixture components differ in layout".into()));
            }
            m = &m + &rho.matrix.scale_real(*w);
        }
        Ok(Self { layout: first.layout.clone(), matrix: m })
    }

    /// Reduced operator on `keep`, in the order given. Also serves as a
    /// register permutation when `keep` lists every register.
    pub fn partial_trace<S: AsRef<str>>(&self, keep: &[S]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::InvalidParameter("partial trace must keep at least one register".into()));
        }
        let qubits = self.layout.qubit_positions(keep)?;
        let layout = self.layout.select(keep)?;
        Ok(Self { matrix: partial_trace_matrix(&self.matrix, self.layout.total_qubits(), &qubits), layout })
    }

    /// Same as [`DensityOperator::partial_trace`] but names the traced-out
    /// registers instead.
    pub fn trace_out<S: AsRef<str>>(&self, discard: &[S]) -> Result<Self> {
        for d in discard {
            self.layout.register(d.as_ref())?;
        }
        let keep = self.layout.complement(discard);
        self.partial_trace(&keep)
    }

    /// `U ρ U†` with `u` acting on the named registers.
    pub fn apply_unitary<S: AsRef<str>>(&self, u: &ComplexMatrix, targets: &[S]) -> Result<Self> {
        let qubits = self.layout.qubit_positions(targets)?;
        check_local_unitary(u, qubits.len())?;
        Ok(self.conjugate_unchecked(u, &qubits))
    }

    /// `K ρ K†` for any operator `K` on the given qubit positions.
    pub(crate) fn conjugate_unchecked(&self, k: &ComplexMatrix, qubits: &[usize]) -> Self {
        let n = self.layout.total_qubits();
        let mut m = self.matrix.clone();
        apply_local_left(&mut m, n, qubits, k);
        apply_local_right_adjoint(&mut m, n, qubits, k);
        Self { layout: self.layout.clone(), matrix: m }
    }

    /// `K ρ K†` on named registers, no structural check on `K`.
    pub fn conjugate<S: AsRef<str>>(&self, k: &ComplexMatrix, targets: &[S]) -> Result<Self> {
        let qubits = self.layout.qubit_positions(targets)?;
        if k.rows() != 1 << qubits.len() || k.cols() != k.rows() {
            return Err(Error::DimensionMismatch { expected: 1 << qubits.len(), found: k.rows() });
        }
        Ok(self.conjugate_unchecked(k, &qubits))
    }

    /// `Tr((O ⊗ I) ρ)` with `O` on the named registers.
    pub fn expectation<S: AsRef<str>>(&self, op: &ComplexMatrix, targets: &[S]) -> Result<Complex64> {
        let reduced = self.partial_trace(targets)?;
        if op.rows() != reduced.matrix.rows() || !op.is_square() {
            return Err(Error::DimensionMismatch { expected: reduced.matrix.rows(), found: op.rows() });
        }
        Ok(op.trace_product(&reduced.matrix))
    }

    pub(crate) fn scaled(&self, s: f64) -> Self {
        Self { layout: self.layout.clone(), matrix: self.matrix.scale_real(s) }
    }
}

pub(crate) fn validate_density(m: &ComplexMatrix) -> Result<()> {
    m.ensure_square()?;
    let dev = m.hermitian_deviation();
    if dev > STRUCTURE_TOL {
        return Err(Error::NotHermitian(dev));
    }
    let tr = m.trace();
    if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
        return Err(Error::NotDensity(format!("trace {tr} is not 1")));
    }
    let spectrum = linalg::eigh(m)?;
    let min = spectrum.eigenvalues.last().copied().unwrap_or(0.0);
    if min < -STATE_TOL {
        return Err(Error::NotDensity(format!("negative eigenvalue {min:.3e}")));
    }
    Ok(())
}

fn check_local_unitary(u: &ComplexMatrix, n_targets: usize) -> Result<()> {
    let d = u.ensure_square()?;
    if d != 1 << n_targets {
        return Err(Error::DimensionMismatch { expected: 1 << n_targets, found: d });
    }
    let dev = u.unitary_deviation();
    if dev > STRUCTURE_TOL {
        return Err(Error::NotUnitary(dev));
    }
    Ok(())
}

pub(crate) fn partial_trace_matrix(m: &ComplexMatrix, n_qubits: usize, keep: &[usize]) -> ComplexMatrix {
    let (kept, rest, n_rest) = split_indices(n_qubits, keep);
    let dk = 1usize << keep.len();
    let dr = 1usize << n_rest;
    let mut compose = vec![0usize; dk * dr];
    for i in 0..kept.len() {
        compose[kept[i] * dr + rest[i]] = i;
    }
    let d = m.rows();
    let data = m.data();
    let mut out = ComplexMatrix::zeros(dk, dk);
    for a in 0..dk {
        for b in 0..dk {
            let mut acc = ZERO;
            for r in 0..dr {
                acc += data[compose[a * dr + r] * d + compose[b * dr + r]];
            }
            out[(a, b)] = acc;
        }
    }
    out
}

pub(crate) fn apply_local_vec(v: &mut [Complex64], n_qubits: usize, targets: &[usize], op: &ComplexMatrix) {
    let ix = LocalIndexer::new(n_qubits, targets);
    let k = ix.offsets.len();
    let mut tmp = vec![ZERO; k];
    for &base in &ix.bases {
        for (a, off) in ix.offsets.iter().enumerate() {
            tmp[a] = v[base + off];
        }
        for (a, off) in ix.offsets.iter().enumerate() {
            let row = &op.data()[a * k..(a + 1) * k];
            v[base + off] = row.iter().zip(&tmp).map(|(x, y)| x * y).sum();
        }
    }
}

/// `m ← (K ⊗ I) m`
fn apply_local_left(m: &mut ComplexMatrix, n_qubits: usize, targets: &[usize], op: &ComplexMatrix) {
    let ix = LocalIndexer::new(n_qubits, targets);
    let k = ix.offsets.len();
    let d = m.cols();
    let data = m.data_mut();
    let mut tmp = vec![ZERO; k * d];
    for &base in &ix.bases {
        for (a, off) in ix.offsets.iter().enumerate() {
            tmp[a * d..(a + 1) * d].copy_from_slice(&data[(base + off) * d..(base + off + 1) * d]);
        }
        for (a, off) in ix.offsets.iter().enumerate() {
            let row = &mut data[(base + off) * d..(base + off + 1) * d];
            row.iter_mut().for_each(|x| *x = ZERO);
            for b in 0..k {
                let coeff = op.data()[a * k + b];
                if coeff == ZERO {
                    continue;
                }
                for (x, y) in row.iter_mut().zip(&tmp[b * d..(b + 1) * d]) {
                    *x += coeff * y;
                }
            }
        }
    }
}

/// `m ← m (K ⊗ I)†`
fn apply_local_right_adjoint(m: &mut ComplexMatrix, n_qubits: usize, targets: &[usize], op: &ComplexMatrix) {
    let conj = op.conj();
    let d = m.cols();
    let rows = m.rows();
    let data = m.data_mut();
    for r in 0..rows {
        apply_local_vec(&mut data[r * d..(r + 1) * d], n_qubits, targets, &conj);
    }
}
