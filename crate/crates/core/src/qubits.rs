//! Qubit labelling.
//!
//! Qubits are labelled `1..=n`. Qubit 1 is the most significant bit of a
//! computational-basis index, so `|q₁ q₂ … qₙ⟩` reads left to right as a
//! binary number.

use std::collections::BTreeSet;
use std::fmt;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::Real;

/// Basis-index bit of qubit `q` (1-based) in an `n`-qubit register.
#[inline]
pub fn qubit_bit(n_qubits: usize, q: usize) -> usize {
    1usize << (n_qubits - q)
}

/// A set of qubit labels within an `n`-qubit register.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QubitSubset {
    n_qubits: usize,
    members: BTreeSet<usize>,
}

impl QubitSubset {
    pub fn new(n_qubits: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        if n_qubits == 0 || n_qubits >= usize::BITS as usize {
            return Err(Error::InvalidSize(format!("unsupported qubit count {n_qubits}")));
        }
        let members: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&q| q == 0 || q > n_qubits) {
            return Err(Error::QubitIndex { index: bad, n_qubits });
        }
        Ok(Self { n_qubits, members })
    }

    /// Decodes the label mask where bit `i − 1` is set iff qubit `i` is a member.
    pub fn from_label_mask(n_qubits: usize, mask: u64) -> Result<Self> {
        if n_qubits < 64 && mask >> n_qubits != 0 {
            return Err(Error::InvalidPartition(format!(
                "mask {mask:#b} names qubits beyond {n_qubits}"
            )));
        }
        Self::new(n_qubits, (1..=n_qubits).filter(|&q| mask >> (q - 1) & 1 == 1))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, q: usize) -> bool {
        self.members.contains(&q)
    }

    pub fn complement(&self) -> Self {
        Self {
            n_qubits: self.n_qubits,
            members: (1..=self.n_qubits).filter(|q| !self.members.contains(q)).collect(),
        }
    }

    /// Bit (i − 1) set iff qubit i is a member.
    pub fn label_mask(&self) -> u64 {
        self.members.iter().fold(0, |m, &q| m | 1 << (q - 1))
    }

    /// Mask over computational-basis indices covering the members' bits.
    pub fn index_mask(&self) -> usize {
        self.members.iter().fold(0, |m, &q| m | qubit_bit(self.n_qubits, q))
    }

    /// Fails unless the subset is nonempty and not the whole register.
    pub fn ensure_proper(&self) -> Result<()> {
        if self.members.is_empty() {
            Err(Error::InvalidPartition("subset is empty".into()))
        } else if self.members.len() == self.n_qubits {
            Err(Error::InvalidPartition("subset covers every qubit".into()))
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for QubitSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for q in &self.members {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{q}")?;
            first = false;
        }
        Ok(())
    }
}

/// Lifts an operator on `targets` (in the order given, first target most
/// significant) to the full `n`-qubit register, acting as identity elsewhere.
pub fn embed_operator<T: Real>(
    op: &ComplexMatrix<T>,
    targets: &[usize],
    n_qubits: usize,
) -> Result<ComplexMatrix<T>> {
    let k = targets.len();
    if op.dim() != 1 << k {
        return Err(Error::DimensionMismatch { expected: 1 << k, got: op.dim() });
    }
    let distinct: BTreeSet<_> = targets.iter().collect();
    if distinct.len() != k {
        return Err(Error::InvalidPartition("repeated target qubit".into()));
    }
    if let Some(&bad) = targets.iter().find(|&&q| q == 0 || q > n_qubits) {
        return Err(Error::QubitIndex { index: bad, n_qubits });
    }
    let bits: Vec<usize> = targets.iter().map(|&q| qubit_bit(n_qubits, q)).collect();
    let target_mask: usize = bits.iter().sum();
    let local = |idx: usize| -> usize {
        bits.iter().fold(0, |acc, &b| (acc << 1) | usize::from(idx & b != 0))
    };
    let dim = 1usize << n_qubits;
    let mut data = vec![Complex::zero(); dim * dim];
    for r in 0..dim {
        let lr = local(r);
        for c in 0..dim {
            if r & !target_mask == c & !target_mask {
                data[r * dim + c] = op[(lr, local(c))];
            }
        }
    }
    ComplexMatrix::new(dim, data)
}
