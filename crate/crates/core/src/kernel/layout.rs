use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Register {
    pub name: String,
    pub qubits: usize,
}

/// Named qubit registers laid out left to right.
///
/// The leftmost qubit of the leftmost register is the most significant bit of
/// the basis index, and the same holds inside each register.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegisterLayout {
    registers: Vec<Register>,
}

impl RegisterLayout {
    pub fn new<S: Into<String>>(parts: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let registers: Vec<Register> = parts.into_iter().map(|(name, qubits)| Register { name: name.into(), qubits }).collect();
        for (i, r) in registers.iter().enumerate() {
            if r.qubits == 0 {
                return Err(Error::InvalidLayout(format!("register `{}` has no qubits", r.name)));
            }
            if registers[..i].iter().any(|o| o.name == r.name) {
                return Err(Error::InvalidLayout(format!("duplicate register `{}`", r.name)));
            }
        }
        Ok(Self { registers })
    }

    /// Layout of single-qubit registers with the given names.
    pub fn qubits<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        Self::new(names.into_iter().map(|n| (n, 1)))
    }

    pub fn registers(&self) -> &[Register] {
        &self.registers
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.registers.iter().map(|r| r.name.as_str())
    }

    pub fn total_qubits(&self) -> usize {
        self.registers.iter().map(|r| r.qubits).sum()
    }

    pub fn dim(&self) -> usize {
        1usize << self.total_qubits()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.registers.iter().any(|r| r.name == name)
    }

    pub fn register(&self, name: &str) -> Result<&Register> {
        self.registers.iter().find(|r| r.name == name).ok_or_else(|| Error::UnknownRegister(name.to_string()))
    }

    /// Qubit positions occupied by `name`.
    pub fn span(&self, name: &str) -> Result<Range<usize>> {
        let mut start = 0;
        for r in &self.registers {
            if r.name == name {
                return Ok(start..start + r.qubits);
            }
            start += r.qubits;
        }
        Err(Error::UnknownRegister(name.to_string()))
    }

    /// Qubit positions of the named registers, concatenated in the order given.
    pub fn qubit_positions<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for (i, n) in names.iter().enumerate() {
            let n = n.as_ref();
            if names[..i].iter().any(|o| o.as_ref() == n) {
                return Err(Error::InvalidLayout(format!("register `{n}` listed twice")));
            }
            out.extend(self.span(n)?);
        }
        Ok(out)
    }

    /// Sub-layout containing the named registers in the order given.
    pub fn select<S: AsRef<str>>(&self, names: &[S]) -> Result<Self> {
        let parts =
            names.iter().map(|n| self.register(n.as_ref()).map(|r| (r.name.clone(), r.qubits))).collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }

    /// Registers not in `names`, in layout order.
    pub fn complement<S: AsRef<str>>(&self, names: &[S]) -> Vec<String> {
        self.registers.iter().filter(|r| !names.iter().any(|n| n.as_ref() == r.name)).map(|r| r.name.clone()).collect()
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        Self::new(self.registers.iter().chain(&other.registers).map(|r| (r.name.clone(), r.qubits)))
    }

    /// Same shape with registers renamed position by position.
    pub fn renamed<S: Into<String>>(&self, names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() != self.registers.len() {
            return Err(Error::DimensionMismatch { expected: self.registers.len(), found: names.len() });
        }
        Self::new(names.into_iter().zip(self.registers.iter().map(|r| r.qubits)))
    }

    pub fn qubits_in<S: AsRef<str>>(&self, names: &[S]) -> Result<usize> {
        names.iter().map(|n| self.register(n.as_ref()).map(|r| r.qubits)).sum()
    }
}

/// Index bookkeeping for an operator acting on a subset of qubits.
///
/// `offsets[a]` is the contribution of local index `a` (targets in the order
/// given, first target most significant) and `bases` enumerates every
/// full index whose target bits are all zero.
pub(crate) struct LocalIndexer {
    pub offsets: Vec<usize>,
    pub bases: Vec<usize>,
}

impl LocalIndexer {
    pub fn new(n_qubits: usize, targets: &[usize]) -> Self {
        let k = targets.len();
        let bit = |q: usize| 1usize << (n_qubits - 1 - q);
        let offsets =
            (0..1usize << k).map(|a| (0..k).filter(|&t| a >> (k - 1 - t) & 1 == 1).map(|t| bit(targets[t])).sum()).collect();
        let mask: usize = targets.iter().map(|&q| bit(q)).sum();
        let bases = (0..1usize << n_qubits).filter(|i| i & mask == 0).collect();
        Self { offsets, bases }
    }
}

/// Maps every full basis index to `(kept, rest)` local indices, with kept
/// qubits in the order given and the rest in ascending position.
pub(crate) fn split_indices(n_qubits: usize, keep: &[usize]) -> (Vec<usize>, Vec<usize>, usize) {
    let rest: Vec<usize> = (0..n_qubits).filter(|q| !keep.contains(q)).collect();
    let dim = 1usize << n_qubits;
    let gather = |idx: usize, qs: &[usize]| qs.iter().fold(0usize, |acc, &q| (acc << 1) | (idx >> (n_qubits - 1 - q) & 1));
    let kept = (0..dim).map(|i| gather(i, keep)).collect();
    let others = (0..dim).map(|i| gather(i, &rest)).collect();
    (kept, others, rest.len())
}
