//! SWAP test: ancilla `H`, controlled swap of two register groups, `H`,
//! measure the ancilla. Outcome `0` accepts.

use crate::error::{Error, Result};
use crate::kernel::measure::ProjectiveMeasurement;
use crate::kernel::{make_gate, measure, DensityOperator, Gate, MeasurementRecord, RegisterLayout, Sampling, StateVector};
use crate::linalg::{ComplexMatrix, ONE};

pub const SWAP_ANCILLA: &str = "swap_anc";

fn group_qubits(layout: &RegisterLayout, group: &[&str]) -> Result<usize> {
    layout.qubits_in(group)
}

/// Controlled swap of two `n`-qubit blocks, control first.
fn controlled_swap(n: usize) -> ComplexMatrix {
    let half = 1usize << (2 * n);
    let d = 2 * half;
    let mask = (1usize << n) - 1;
    let mut m = ComplexMatrix::zeros(d, d);
    for i in 0..d {
        let j = if i >= half {
            let rest = i - half;
            let (a, b) = (rest >> n, rest & mask);
            half + (b << n | a)
        } else {
            i
        };
        m[(j, i)] = ONE;
    }
    m
}

/// Swap operator `F` on two `n`-qubit blocks.
pub fn swap_operator(n: usize) -> ComplexMatrix {
    let d = 1usize << (2 * n);
    let mask = (1usize << n) - 1;
    let mut m = ComplexMatrix::zeros(d, d);
    for i in 0..d {
        let (a, b) = (i >> n, i & mask);
        m[((b << n) | a, i)] = ONE;
    }
    m
}

/// State just before the ancilla measurement, ancilla first.
pub fn swap_circuit(state: &DensityOperator, reg1: &[&str], reg2: &[&str]) -> Result<DensityOperator> {
    let n1 = group_qubits(state.layout(), reg1)?;
    let n2 = group_qubits(state.layout(), reg2)?;
    if n1 != n2 {
        return Err(Error::DimensionMismatch { expected: 1 << n1, found: 1 << n2 });
    }
    let anc = StateVector::zero(RegisterLayout::qubits([SWAP_ANCILLA])?).density();
    let h = make_gate(Gate::H)?;
    let mut targets = vec![SWAP_ANCILLA];
    targets.extend_from_slice(reg1);
    targets.extend_from_slice(reg2);
    anc.tensor(state)?
        .apply_unitary(&h, &[SWAP_ANCILLA])?
        .apply_unitary(&controlled_swap(n1), &targets)?
        .apply_unitary(&h, &[SWAP_ANCILLA])
}

/// Measures the ancilla; labels `0` (accept) and `1`.
pub fn swap_test(
    state: &DensityOperator,
    reg1: &[&str],
    reg2: &[&str],
    sampling: Sampling<'_>,
) -> Result<Vec<MeasurementRecord>> {
    let pre = swap_circuit(state, reg1, reg2)?;
    let m = ProjectiveMeasurement::standard_basis([SWAP_ANCILLA], 1)?;
    measure(&pre, &m, sampling)
}

/// Acceptance probability from the full circuit.
pub fn swap_accept_probability(state: &DensityOperator, reg1: &[&str], reg2: &[&str]) -> Result<f64> {
    let pre = swap_circuit(state, reg1, reg2)?;
    let anc = pre.partial_trace(&[SWAP_ANCILLA])?;
    Ok(anc.matrix()[(0, 0)].re)
}

/// `(1 + Tr(ρσ))/2`
pub fn swap_formula(rho: &ComplexMatrix, sigma: &ComplexMatrix) -> Result<f64> {
    rho.ensure_same_shape(sigma)?;
    Ok(0.5 * (1.0 + rho.trace_product(sigma).re))
}

/// `(1 + Tr(F ρ₁₂))/2` on the joint marginal of the two groups; reduces to
/// [`swap_formula`] on product inputs.
pub fn swap_formula_joint(state: &DensityOperator, reg1: &[&str], reg2: &[&str]) -> Result<f64> {
    let n = group_qubits(state.layout(), reg1)?;
    if group_qubits(state.layout(), reg2)? != n {
        return Err(Error::InvalidLayout("SWAP groups differ in size".into()));
    }
    let mut both: Vec<&str> = reg1.to_vec();
    both.extend_from_slice(reg2);
    let f = swap_operator(n);
    Ok(0.5 * (1.0 + state.expectation(&f, &both)?.re))
}
