use std::fmt;

use crate::error::{Error, Result};
use crate::qubits::QubitSubset;

/// A bipartition `P₁ | P₂` of the register. Stored canonically with qubit 1
/// in `P₁`, so a cut and its mirror image compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BipartiteCut {
    p1: QubitSubset,
}

impl BipartiteCut {
    pub fn new(side: QubitSubset) -> Result<Self> {
        side.ensure_proper()?;
        let p1 = if side.contains(1) { side } else { side.complement() };
        Ok(Self { p1 })
    }

    pub fn from_members(n_qubits: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::new(QubitSubset::new(n_qubits, members)?)
    }

    /// Bit `i − 1` of `mask` set iff qubit `i` is on one side.
    pub fn from_label_mask(n_qubits: usize, mask: u64) -> Result<Self> {
        Self::new(QubitSubset::from_label_mask(n_qubits, mask)?)
    }

    pub fn n_qubits(&self) -> usize {
        self.p1.n_qubits()
    }

    /// The side containing qubit 1.
    pub fn p1(&self) -> &QubitSubset {
        &self.p1
    }

    pub fn p2(&self) -> QubitSubset {
        self.p1.complement()
    }

    /// Label mask of `P₁` (always odd).
    pub fn bitmask(&self) -> u64 {
        self.p1.label_mask()
    }
}

impl fmt::Display for BipartiteCut {
    /// `1,3|2`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.p1, self.p2())
    }
}

/// All `2^{n−1} − 1` canonical cuts, by ascending `P₁` mask.
pub fn enumerate_cuts(n: usize) -> Result<Vec<BipartiteCut>> {
    if n < 2 {
        return Err(Error::InvalidSize(format!("cuts need at least 2 qubits, got {n}")));
    }
    if n >= 64 {
        return Err(Error::InvalidSize(format!("{n} qubits cannot be enumerated")));
    }
    let full = (1u64 << n) - 1;
    (1..full)
        .step_by(2)
        .map(|mask| BipartiteCut::from_label_mask(n, mask))
        .collect()
}
