//! Random permutation of register pairs followed by discarding all but two.
//!
//! Permuting `ℓ` pairs uniformly and keeping the first two is the same as
//! keeping a uniformly random ordered pair of distinct indices, so the exact
//! average runs over `ℓ(ℓ−1)` ordered pairs instead of `ℓ!` permutations.

use rand::seq::SliceRandom;

use super::layout::RegisterLayout;
use super::rng::TrialRng;
use super::state::{DensityOperator, StateVector};
use crate::error::{Error, Result};

/// Anything that can be reduced to a subset of its registers.
pub trait Reducible {
    fn layout(&self) -> &RegisterLayout;
    fn reduce(&self, keep: &[String]) -> Result<DensityOperator>;
}

impl Reducible for StateVector {
    fn layout(&self) -> &RegisterLayout {
        StateVector::layout(self)
    }

    fn reduce(&self, keep: &[String]) -> Result<DensityOperator> {
        self.reduced(keep)
    }
}

impl Reducible for DensityOperator {
    fn layout(&self) -> &RegisterLayout {
        DensityOperator::layout(self)
    }

    fn reduce(&self, keep: &[String]) -> Result<DensityOperator> {
        self.partial_trace(keep)
    }
}

pub enum PairMode<'a> {
    ExactAverage,
    Sample(&'a mut TrialRng),
}

#[derive(Debug, Clone)]
pub struct Symmetrized {
    /// Registers outside the pairs in layout order, then the two retained
    /// pairs under the names of `pairs[0]` and `pairs[1]`.
    pub state: DensityOperator,
    /// The ordered pair that was kept, in sample mode.
    pub chosen: Option<(usize, usize)>,
}

/// Reduced state when pairs `i` and `j` are moved to the first two slots.
pub fn keep_ordered_pair<S: Reducible>(state: &S, pairs: &[(String, String)], i: usize, j: usize) -> Result<DensityOperator> {
    check_pairs(state.layout(), pairs)?;
    if i == j || i >= pairs.len() || j >= pairs.len() {
        return Err(Error::InvalidParameter(format!("invalid ordered pair ({i}, {j})")));
    }
    let pair_names: Vec<&str> = pairs.iter().flat_map(|(a, b)| [a.as_str(), b.as_str()]).collect();
    let mut keep = state.layout().complement(&pair_names);
    let n_outside = keep.len();
    keep.extend([pairs[i].0.clone(), pairs[i].1.clone(), pairs[j].0.clone(), pairs[j].1.clone()]);
    let reduced = state.reduce(&keep)?;
    let mut names: Vec<String> = keep[..n_outside].to_vec();
    names.extend([pairs[0].0.clone(), pairs[0].1.clone(), pairs[1].0.clone(), pairs[1].1.clone()]);
    let layout = reduced.layout().renamed(names)?;
    reduced.relabel(layout)
}

/// Draws a uniformly random permutation of `ℓ` items and returns its first
/// two entries.
pub fn sample_ordered_pair(rng: &mut TrialRng, l: usize) -> (usize, usize) {
    let mut perm: Vec<usize> = (0..l).collect();
    perm.shuffle(rng);
    (perm[0], perm[1])
}

pub fn symmetrize_pairs<S: Reducible>(state: &S, pairs: &[(String, String)], mode: PairMode<'_>) -> Result<Symmetrized> {
    check_pairs(state.layout(), pairs)?;
    let l = pairs.len();
    match mode {
        PairMode::Sample(rng) => {
            let (i, j) = sample_ordered_pair(rng, l);
            Ok(Symmetrized { state: keep_ordered_pair(state, pairs, i, j)?, chosen: Some((i, j)) })
        }
        PairMode::ExactAverage => {
            let weight = 1.0 / (l * (l - 1)) as f64;
            let mut parts = Vec::with_capacity(l * (l - 1));
            for i in 0..l {
                for j in 0..l {
                    if i != j {
                        parts.push(keep_ordered_pair(state, pairs, i, j)?);
                    }
                }
            }
            let weighted: Vec<(f64, &DensityOperator)> = parts.iter().map(|p| (weight, p)).collect();
            Ok(Symmetrized { state: DensityOperator::mixture(&weighted)?, chosen: None })
        }
    }
}

fn check_pairs(layout: &RegisterLayout, pairs: &[(String, String)]) -> Result<()> {
    if pairs.len() < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 register pairs, got {}", pairs.len())));
    }
    let shape =
        |(a, b): &(String, String)| -> Result<(usize, usize)> { Ok((layout.register(a)?.qubits, layout.register(b)?.qubits)) };
    let first = shape(&pairs[0])?;
    for p in &pairs[1..] {
        if shape(p)? != first {
            return Err(Error::InvalidLayout(format!("pair ({}, {}) differs in shape", p.0, p.1)));
        }
    }
    Ok(())
}
