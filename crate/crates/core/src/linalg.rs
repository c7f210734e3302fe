//! Dense complex linear algebra.
//!
//! Matrices are stored row-major. Spectral routines delegate to `faer`
//! and convert at the boundary; everything else is computed directly on the
//! flat buffer.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use faer::{Mat, Side};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance for Hermiticity, unitarity and projector checks.
pub const STRUCTURE_TOL: f64 = 1e-10;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    /// Builds a matrix from a row-major buffer. Fails if the length does not
    /// equal `rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from nested rows. Panics on ragged input; meant for
    /// literal gate tables.
    pub fn from_rows(rows: &[&[Complex64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix literal");
            data.extend_from_slice(row);
        }
        Self { rows: r, cols: c, data }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * n + i] = Complex64::new(d, 0.0);
        }
        m
    }

    /// `|a⟩⟨b|`
    pub fn outer(a: &[Complex64], b: &[Complex64]) -> Self {
        let mut m = Self::zeros(a.len(), b.len());
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                m.data[i * b.len() + j] = ai * bj.conj();
            }
        }
        m
    }

    /// `|v⟩⟨v|`
    pub fn projector_onto(v: &[Complex64]) -> Self {
        Self::outer(v, v)
    }

    /// Column vector `|v⟩` as an `n x 1` matrix.
    pub fn column(v: &[Complex64]) -> Self {
        Self { rows: v.len(), cols: 1, data: v.to_vec() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<Complex64> {
        self.data
    }

    pub fn ensure_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn ensure_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: other.rows });
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.cols });
        }
        Ok(())
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].conj();
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    /// Panics on shape mismatch; use [`ComplexMatrix::try_matmul`] on
    /// untrusted input.
    pub fn matmul(&self, rhs: &Self) -> Self {
        self.try_matmul(rhs).expect("matmul shape mismatch")
    }

    pub fn try_matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: rhs.rows });
        }
        let (n, k, m) = (self.rows, self.cols, rhs.cols);
        let mut out = vec![ZERO; n * m];
        for i in 0..n {
            let out_row = &mut out[i * m..(i + 1) * m];
            for l in 0..k {
                let a = self.data[i * k + l];
                if a == ZERO {
                    continue;
                }
                let rhs_row = &rhs.data[l * m..(l + 1) * m];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        Ok(Self { rows: n, cols: m, data: out })
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn trace(&self) -> Complex64 {
        let n = self.rows.min(self.cols);
        (0..n).map(|i| self.data[i * self.cols + i]).sum()
    }

    /// `Tr(self · rhs)` without forming the product.
    pub fn trace_product(&self, rhs: &Self) -> Complex64 {
        assert_eq!(self.cols, rhs.rows);
        assert_eq!(self.rows, rhs.cols);
        let mut acc = ZERO;
        for i in 0..self.rows {
            for k in 0..self.cols {
                acc += self.data[i * self.cols + k] * rhs.data[k * rhs.cols + i];
            }
        }
        acc
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let d = (self.data[i * n + j] - self.data[j * n + i].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    pub fn unitary_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.adjoint().matmul(self).max_abs_diff(&Self::identity(self.rows))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitary_deviation() <= tol
    }

    pub fn projector_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let idem = self.matmul(self).max_abs_diff(self);
        idem.max(self.hermitian_deviation())
    }

    pub fn is_projector(&self, tol: f64) -> bool {
        self.projector_deviation() <= tol
    }

    /// Zeroes the anti-Hermitian part: `(A + A†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        let adj = self.adjoint();
        (self + &adj).scale_real(0.5)
    }

    pub(crate) fn to_faer(&self) -> Mat<Complex64> {
        Mat::from_fn(self.rows, self.cols, |i, j| self.data[i * self.cols + j])
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

/// Kronecker product `a ⊗ b`. Block `(i, j)` of the result is `a[i, j] · b`.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = ComplexMatrix::zeros(rows, cols);
    for ai in 0..a.rows {
        for aj in 0..a.cols {
            let s = a.data[ai * a.cols + aj];
            if s == ZERO {
                continue;
            }
            for bi in 0..b.rows {
                let row = ai * b.rows + bi;
                for bj in 0..b.cols {
                    out.data[row * cols + aj * b.cols + bj] = s * b.data[bi * b.cols + bj];
                }
            }
        }
    }
    out
}

/// Kronecker product of two vectors.
pub fn tensor_vec(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// Eigenvectors as columns, matching `eigenvalues` order.
    pub eigenvectors: ComplexMatrix,
}

impl Spectrum {
    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        let n = self.eigenvectors.rows();
        (0..n).map(|i| self.eigenvectors[(i, k)]).collect()
    }

    /// `V f(Λ) V†`
    pub fn map_eigenvalues(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.eigenvectors.rows();
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &lam) in self.eigenvalues.iter().enumerate() {
            let w = f(lam);
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vi = self.eigenvectors[(i, k)] * w;
                for j in 0..n {
                    out[(i, j)] += vi * self.eigenvectors[(j, k)].conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_eigenvalues(|x| x)
    }
}

/// Hermitian eigendecomposition. Input must be Hermitian within
/// [`STRUCTURE_TOL`] (scaled by the matrix magnitude).
pub fn eigh(m: &ComplexMatrix) -> Result<Spectrum> {
    m.ensure_square()?;
    let dev = m.hermitian_deviation();
    if dev > STRUCTURE_TOL * m.frobenius_norm().max(1.0) {
        return Err(Error::NotHermitian(dev));
    }
    eigh_unchecked(&m.hermitian_part())
}

fn eigh_unchecked(m: &ComplexMatrix) -> Result<Spectrum> {
    let n = m.rows();
    let decomposition =
        m.to_faer().self_adjoint_eigen(Side::Lower).map_err(|e| Error::Numerical(format!("eigensolver failed: {e:?}")))?;
    let (s, u) = (decomposition.S(), decomposition.U());
    // solver order is ascending
    let mut order: Vec<usize> = (0..n).rev().collect();
    order.sort_by(|&a, &b| s[b].re.partial_cmp(&s[a].re).unwrap_or(std::cmp::Ordering::Equal));
    let mut vectors = ComplexMatrix::zeros(n, n);
    let mut values = Vec::with_capacity(n);
    for (col, &k) in order.iter().enumerate() {
        values.push(s[k].re);
        // fix the phase: largest-magnitude component real and positive
        let pivot = (0..n).max_by(|&a, &b| u[(a, k)].norm().total_cmp(&u[(b, k)].norm()).then(b.cmp(&a))).unwrap_or(0);
        let p = u[(pivot, k)];
        let phase = if p.norm() > 0.0 { p.conj() / p.norm() } else { ONE };
        for i in 0..n {
            vectors[(i, col)] = u[(i, k)] * phase;
        }
    }
    if values.iter().any(|x| !x.is_finite()) || vectors.data.iter().any(|z| !z.is_finite()) {
        return Err(Error::Numerical("eigensolver produced non-finite output".into()));
    }
    Ok(Spectrum { eigenvalues: values, eigenvectors: vectors })
}

/// Singular values, descending.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let mut sv = m.to_faer().singular_values().map_err(|e| Error::Numerical(format!("SVD failed: {e:?}")))?;
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
}

/// `‖A‖₁ = Tr √(A†A)`, the sum of singular values.
pub fn trace_norm(a: &ComplexMatrix) -> Result<f64> {
    a.ensure_square()?;
    if a.is_hermitian(STRUCTURE_TOL * a.frobenius_norm().max(1.0)) {
        return Ok(eigh_unchecked(&a.hermitian_part())?.eigenvalues.iter().map(|x| x.abs()).sum());
    }
    Ok(singular_values(a)?.iter().sum())
}

/// `‖A‖∞`, the largest singular value.
pub fn operator_norm(a: &ComplexMatrix) -> Result<f64> {
    a.ensure_square()?;
    if a.rows() == 0 {
        return Ok(0.0);
    }
    if a.is_hermitian(STRUCTURE_TOL * a.frobenius_norm().max(1.0)) {
        return Ok(eigh_unchecked(&a.hermitian_part())?.eigenvalues.iter().map(|x| x.abs()).fold(0.0, f64::max));
    }
    Ok(singular_values(a)?[0])
}

/// Largest eigenvalue of a Hermitian matrix with a unit eigenvector.
///
/// Within a degenerate top eigenspace the vector returned is whichever one the
/// solver produces first; identical input bits give identical output.
pub fn max_eigpair(m: &ComplexMatrix) -> Result<(f64, Vec<Complex64>)> {
    let spectrum = eigh(m)?;
    let v = spectrum.eigenvector(0);
    Ok((spectrum.eigenvalues[0], v))
}

/// Principal square root of a PSD matrix. Eigenvalues above `-1e-10` are
/// clamped to zero; anything more negative is an error.
pub fn sqrt_psd(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let spectrum = eigh(m)?;
    if let Some(&min) = spectrum.eigenvalues.last() {
        if min < -STRUCTURE_TOL {
            return Err(Error::NotDensity(format!("negative eigenvalue {min:.3e}")));
        }
    }
    Ok(spectrum.map_eigenvalues(|x| x.max(0.0).sqrt()))
}
