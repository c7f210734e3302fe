//! Independent reference implementations used as test oracles. Nothing here
//! calls into the library's linear algebra; matrices are plain row-major
//! vectors and every operator is built from explicit Kronecker products and
//! qubit permutation matrices.

#![allow(dead_code)]

use num_complex::Complex64 as C;

pub const Z: C = C::new(0.0, 0.0);
pub const O: C = C::new(1.0, 0.0);

#[derive(Clone, Debug)]
pub struct Dense {
    pub n: usize,
    pub d: Vec<C>,
}

impl Dense {
    pub fn zeros(n: usize) -> Self {
        Self { n, d: vec![Z; n * n] }
    }

    pub fn eye(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.d[i * n + i] = O;
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> C) -> Self {
        let mut m = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                m.d[r * n + c] = f(r, c);
            }
        }
        m
    }

    pub fn from_slice(n: usize, data: &[C]) -> Self {
        assert_eq!(data.len(), n * n);
        Self { n, d: data.to_vec() }
    }

    pub fn at(&self, r: usize, c: usize) -> C {
        self.d[r * self.n + c]
    }

    pub fn ket_bra(ket: &[C], bra: &[C]) -> Self {
        let n = ket.len();
        Self::from_fn(n, |r, c| ket[r] * bra[c].conj())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n;
        assert_eq!(n, o.n);
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.d[r * n + k];
                if a == Z {
                    continue;
                }
                for c in 0..n {
                    out.d[r * n + c] += a * o.d[k * n + c];
                }
            }
        }
        out
    }

    pub fn dag(&self) -> Self {
        Self::from_fn(self.n, |r, c| self.at(c, r).conj())
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { n: self.n, d: self.d.iter().zip(&o.d).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { n: self.n, d: self.d.iter().zip(&o.d).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { n: self.n, d: self.d.iter().map(|a| a * s).collect() }
    }

    pub fn trace(&self) -> C {
        (0..self.n).map(|i| self.at(i, i)).sum()
    }

    pub fn kron(&self, o: &Self) -> Self {
        let (n, m) = (self.n, o.n);
        Self::from_fn(n * m, |r, c| self.at(r / m, c / m) * o.at(r % m, c % m))
    }

    /// `U ρ U†`
    pub fn conj_by(&self, u: &Self) -> Self {
        u.mul(self).mul(&u.dag())
    }

    pub fn max_diff(&self, o: &Self) -> f64 {
        self.d.iter().zip(&o.d).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// Permutation matrix sending qubit `perm[k]` of the input to position `k`
/// of the output (leftmost qubit is the most significant bit).
pub fn qubit_permutation(n_qubits: usize, perm: &[usize]) -> Dense {
    assert_eq!(perm.len(), n_qubits);
    let dim = 1 << n_qubits;
    let bit = |x: usize, q: usize| (x >> (n_qubits - 1 - q)) & 1;
    let mut m = Dense::zeros(dim);
    for x in 0..dim {
        let mut y = 0;
        for (k, &src) in perm.iter().enumerate() {
            y |= bit(x, src) << (n_qubits - 1 - k);
        }
        m.d[y * dim + x] = O;
    }
    m
}

/// `op` acting on `targets` (in that order) of an `n_qubits` system.
pub fn embed(op: &Dense, n_qubits: usize, targets: &[usize]) -> Dense {
    let mut perm: Vec<usize> = targets.to_vec();
    perm.extend((0..n_qubits).filter(|q| !targets.contains(q)));
    let p = qubit_permutation(n_qubits, &perm);
    let rest = 1 << (n_qubits - targets.len());
    let front = op.kron(&Dense::eye(rest));
    p.dag().mul(&front).mul(&p)
}

/// Marginal on `keep` (in the given order), by summing matrix entries over
/// the discarded bits.
pub fn partial_trace(rho: &Dense, n_qubits: usize, keep: &[usize]) -> Dense {
    let drop: Vec<usize> = (0..n_qubits).filter(|q| !keep.contains(q)).collect();
    let k = keep.len();
    let compose = |kept: usize, dropped: usize| {
        let mut x = 0;
        for (i, &q) in keep.iter().enumerate() {
            x |= ((kept >> (k - 1 - i)) & 1) << (n_qubits - 1 - q);
        }
        for (i, &q) in drop.iter().enumerate() {
            x |= ((dropped >> (drop.len() - 1 - i)) & 1) << (n_qubits - 1 - q);
        }
        x
    };
    let mut out = Dense::zeros(1 << k);
    for r in 0..1 << k {
        for c in 0..1 << k {
            let mut s = Z;
            for e in 0..1 << drop.len() {
                s += rho.at(compose(r, e), compose(c, e));
            }
            out.d[r * (1 << k) + c] = s;
        }
    }
    out
}

/// Eigenvalues of a Hermitian matrix, descending, by cyclic Jacobi on the
/// real embedding `[[Re, −Im], [Im, Re]]` (each eigenvalue appears twice
/// there; every other one is kept).
pub fn jacobi_eigenvalues(h: &Dense) -> Vec<f64> {
    let n = h.n;
    let m = 2 * n;
    let mut a = vec![0.0; m * m];
    for r in 0..n {
        for c in 0..n {
            let z = h.at(r, c);
            a[r * m + c] = z.re;
            a[(r + n) * m + c + n] = z.re;
            a[r * m + c + n] = -z.im;
            a[(r + n) * m + c] = z.im;
        }
    }
    for _sweep in 0..100 {
        let off: f64 =
            (0..m).flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i * m + j].powi(2)).sum();
        if off < 1e-26 {
            break;
        }
        for p in 0..m {
            for q in p + 1..m {
                let apq = a[p * m + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q * m + q] - a[p * m + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..m {
                    let (akp, akq) = (a[k * m + p], a[k * m + q]);
                    a[k * m + p] = c * akp - s * akq;
                    a[k * m + q] = s * akp + c * akq;
                }
                for k in 0..m {
                    let (apk, aqk) = (a[p * m + k], a[q * m + k]);
                    a[p * m + k] = c * apk - s * aqk;
                    a[q * m + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..m).map(|i| a[i * m + i]).collect();
    ev.sort_by(|x, y| y.partial_cmp(x).unwrap());
    ev.into_iter().step_by(2).collect()
}

/// Singular values from the eigenvalues of `A†A`.
pub fn jacobi_singular_values(a: &Dense) -> Vec<f64> {
    jacobi_eigenvalues(&a.dag().mul(a)).into_iter().map(|x| x.max(0.0).sqrt()).collect()
}

pub fn trace_norm(a: &Dense) -> f64 {
    jacobi_singular_values(a).iter().sum()
}

/// `½‖ρ − σ‖₁`
pub fn trace_distance(rho: &Dense, sigma: &Dense) -> f64 {
    0.5 * trace_norm(&rho.sub(sigma))
}

/// Top eigenvalue of a PSD matrix: power iteration from a fixed dense start,
/// read off as a Rayleigh quotient.
pub fn power_iteration(m: &Dense, iters: usize) -> f64 {
    let n = m.n;
    let apply = |v: &[C]| -> Vec<C> { (0..n).map(|r| (0..n).map(|c| m.at(r, c) * v[c]).sum()).collect() };
    let mut v: Vec<C> = (0..n).map(|i| C::new(1.0 + i as f64 * 0.37, 0.1 * i as f64)).collect();
    for _ in 0..iters {
        let w = apply(&v);
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        v = w.into_iter().map(|z| z / norm).collect();
    }
    let w = apply(&v);
    v.iter().zip(&w).map(|(a, b)| a.conj() * b).sum::<C>().re
}

fn h() -> f64 {
    std::f64::consts::FRAC_1_SQRT_2
}

pub fn phi_plus() -> [C; 4] {
    [C::new(h(), 0.0), Z, Z, C::new(h(), 0.0)]
}
pub fn phi_minus() -> [C; 4] {
    [C::new(h(), 0.0), Z, Z, C::new(-h(), 0.0)]
}
pub fn psi_plus() -> [C; 4] {
    [Z, C::new(h(), 0.0), C::new(h(), 0.0), Z]
}
pub fn psi_minus() -> [C; 4] {
    [Z, C::new(h(), 0.0), C::new(-h(), 0.0), Z]
}

pub fn basis(dim: usize, k: usize) -> Vec<C> {
    let mut v = vec![Z; dim];
    v[k] = O;
    v
}

/// `|00⟩⟨Φ⁺| + |01⟩⟨Φ⁻| − |10⟩⟨Ψ⁺| − |11⟩⟨Ψ⁻|`
pub fn w_b() -> Dense {
    let rows = [(0, phi_plus(), 1.0), (1, phi_minus(), 1.0), (2, psi_plus(), -1.0), (3, psi_minus(), -1.0)];
    let mut w = Dense::zeros(4);
    for (k, bra, s) in rows {
        w = w.add(&Dense::ket_bra(&basis(4, k), &bra).scale(s));
    }
    w
}

pub fn pi_plus() -> Dense {
    Dense::ket_bra(&phi_plus(), &phi_plus()).add(&Dense::ket_bra(&psi_plus(), &psi_plus()))
}

pub fn r_gate(q: f64) -> Dense {
    let c = C::new((1.0 - q).sqrt(), 0.0);
    let s = C::new(0.0, -q.sqrt());
    Dense::from_slice(2, &[c, s, s, c])
}

/// Five terminal masses of the verifier: postsel failure, all-zero reject,
/// measured accept, SWAP accept, SWAP reject.
#[derive(Debug, Clone, Copy, Default)]
pub struct OracleMasses {
    pub postsel_fail: f64,
    pub all_zero_reject: f64,
    pub measured_accept: f64,
    pub swap_accept: f64,
    pub swap_reject: f64,
}

impl OracleMasses {
    pub fn accept(&self) -> f64 {
        self.postsel_fail + self.measured_accept + self.swap_accept
    }
    pub fn reject(&self) -> f64 {
        self.all_zero_reject + self.swap_reject
    }
}

/// Full verifier evolution on one big density matrix.
///
/// `proof` is on `P (pq qubits), S1, S1', …, Sℓ, Sℓ'`; `v` is a unitary on
/// `P ⊗ A` with the acceptance qubit first in `A`.
pub fn monolithic_verifier(proof: &Dense, pq: usize, l: usize, v: &Dense, aq: usize) -> OracleMasses {
    let n_proof = pq + 2 * l;
    assert_eq!(proof.n, 1 << n_proof);
    let s = |i: usize| pq + 2 * i;
    let sp = |i: usize| pq + 2 * i + 1;
    let pairs: Vec<(usize, usize)> = (0..l).flat_map(|i| (0..l).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let w = 1.0 / pairs.len() as f64;

    // working order: S1 S1' S2 S2' P A
    let n = 4 + pq + aq;
    let (q_s1, q_s1p, q_s2, q_s2p) = (0, 1, 2, 3);
    let a_qubits: Vec<usize> = (4 + pq..n).collect();
    let pa: Vec<usize> = (4..n).collect();

    let pp = pi_plus();
    let pm = Dense::eye(4).sub(&pp);
    let pinches: Vec<Dense> = [&pp, &pm]
        .iter()
        .flat_map(|a| [&pp, &pm].map(|b| embed(a, n, &[q_s1, q_s1p]).mul(&embed(b, n, &[q_s2, q_s2p]))))
        .collect();

    // SWAP of (S1 S1') with (S2 S2')
    let swap = qubit_permutation(n, &{
        let mut p: Vec<usize> = vec![2, 3, 0, 1];
        p.extend(4..n);
        p
    });
    let id = Dense::eye(1 << n);

    let wb = embed(&w_b(), n, &[q_s1, q_s1p]);
    let vv = embed(v, n, &pa);
    let flip = Dense::from_fn(1 << n, |r, c| {
        if r != c {
            return Z;
        }
        let bit = |q: usize| (r >> (n - 1 - q)) & 1;
        if bit(q_s1) == 1 && bit(a_qubits[0]) == 1 {
            C::new(-1.0, 0.0)
        } else {
            O
        }
    });
    let bell_fail = embed(&pm, n, &[q_s2p, q_s1]);
    let a_zero =
        a_qubits.iter().fold(id.clone(), |acc, &q| acc.mul(&embed(&Dense::ket_bra(&basis(2, 0), &basis(2, 0)), n, &[q])));
    let s2_is = |b: usize| embed(&Dense::ket_bra(&basis(2, b), &basis(2, b)), n, &[q_s2]);
    let reject_phi = embed(&Dense::ket_bra(&phi_plus(), &phi_plus()), n, &[q_s2p, q_s1]).mul(&s2_is(0)).mul(&a_zero);
    let reject_psi = embed(&Dense::ket_bra(&psi_plus(), &psi_plus()), n, &[q_s2p, q_s1]).mul(&s2_is(1)).mul(&a_zero);

    let ancilla = Dense::ket_bra(&basis(1 << aq, 0), &basis(1 << aq, 0));

    let mut out = OracleMasses::default();
    for (i, j) in pairs {
        let mut keep = vec![s(i), sp(i), s(j), sp(j)];
        keep.extend(0..pq);
        let kept = partial_trace(proof, n_proof, &keep).kron(&ancilla);
        let pinched = pinches.iter().fold(Dense::zeros(1 << n), |acc, k| acc.add(&kept.conj_by(k)));

        let swap_acc = pinched.mul(&id.add(&swap).scale(0.5)).trace().re;
        out.swap_accept += w * 0.5 * swap_acc;
        out.swap_reject += w * 0.5 * (1.0 - swap_acc);

        let rho = pinched.conj_by(&wb).conj_by(&vv).conj_by(&flip).conj_by(&vv.dag());
        let fail = rho.mul(&bell_fail).trace().re;
        let rej = rho.mul(&reject_phi).trace().re + rho.mul(&reject_psi).trace().re;
        out.postsel_fail += w * 0.5 * fail;
        out.all_zero_reject += w * 0.5 * rej;
        out.measured_accept += w * 0.5 * (1.0 - fail - rej);
    }
    out
}
