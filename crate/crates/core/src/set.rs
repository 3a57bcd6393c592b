//! Subsets of the constraint universe.
//!
//! A [`ConstraintSet`] is a bit vector of fixed length `n`, bit `i` standing
//! for constraint `i` (0-based). All human-facing text uses 1-based indices.

use std::fmt;

use bitvec::prelude::*;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConstraintSet {
    bits: BitVec<u64, Lsb0>,
}

impl ConstraintSet {
    /// The empty subset of an `n`-constraint universe.
    pub fn empty(n: usize) -> Self {
        ConstraintSet {
            bits: bitvec![u64, Lsb0; 0; n],
        }
    }

    /// The whole universe.
    pub fn full(n: usize) -> Self {
        ConstraintSet {
            bits: bitvec![u64, Lsb0; 1; n],
        }
    }

    /// Builds a set from 0-based indices. Panics on an index `>= n`.
    pub fn from_indices(n: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(n);
        for i in indices {
            set.insert(i);
        }
        set
    }

    /// Builds a set from 1-based constraint numbers, rejecting out-of-range ones.
    pub fn from_one_based(n: usize, numbers: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut set = Self::empty(n);
        for k in numbers {
            if k == 0 || k > n {
                return Err(Error::Precondition(format!(
                    "constraint number {k} outside 1..={n}"
                )));
            }
            set.insert(k - 1);
        }
        Ok(set)
    }

    /// Low `n` bits of `mask`, bit `i` = constraint `i`. Requires `n <= 64`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64, "mask construction needs n <= 64");
        Self::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1))
    }

    /// Inverse of [`ConstraintSet::from_mask`]. Requires `n <= 64`.
    pub fn to_mask(&self) -> u64 {
        assert!(self.universe() <= 64, "mask conversion needs n <= 64");
        self.iter().fold(0u64, |m, i| m | 1 << i)
    }

    /// Parses a bit string such as `"1010"` (position 0 first).
    pub fn from_bit_str(text: &str) -> Result<Self> {
        let mut set = Self::empty(text.len());
        for (i, ch) in text.chars().enumerate() {
            match ch {
                '1' => set.insert(i),
                '0' => {}
                other => {
                    return Err(Error::Precondition(format!(
                        "invalid character {other:?} in bit string"
                    )))
                }
            }
        }
        Ok(set)
    }

    /// Size of the universe this set lives in.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.not_any()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits.get(i).map(|b| *b).unwrap_or(false)
    }

    pub fn insert(&mut self, i: usize) {
        self.bits.set(i, true);
    }

    pub fn remove(&mut self, i: usize) {
        self.bits.set(i, false);
    }

    pub fn with(&self, i: usize) -> Self {
        let mut s = self.clone();
        s.insert(i);
        s
    }

    pub fn without(&self, i: usize) -> Self {
        let mut s = self.clone();
        s.remove(i);
        s
    }

    /// Members in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter_ones()
    }

    /// Non-members in ascending index order.
    pub fn iter_absent(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter_zeros()
    }

    /// 1-based constraint numbers, ascending.
    pub fn to_one_based(&self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    fn same_universe(&self, other: &Self) -> Result<()> {
        if self.universe() == other.universe() {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                left: self.universe(),
                right: other.universe(),
            })
        }
    }

    /// True iff every member of `self` is a member of `other`.
    pub fn is_subset_of(&self, other: &Self) -> Result<bool> {
        self.same_universe(other)?;
        Ok(self.subset_of(other))
    }

    pub(crate) fn subset_of(&self, other: &Self) -> bool {
        debug_assert_eq!(self.universe(), other.universe());
        self.bits.iter_ones().all(|i| other.bits[i])
    }

    /// `within \ self`, defined only when `self ⊆ within`.
    pub fn complement(&self, within: &Self) -> Result<Self> {
        if !self.is_subset_of(within)? {
            return Err(Error::Precondition(format!(
                "{self} is not a subset of {within}"
            )));
        }
        Ok(within.minus(self))
    }

    /// Plain set difference `self \ other`.
    pub(crate) fn minus(&self, other: &Self) -> Self {
        debug_assert_eq!(self.universe(), other.universe());
        let mut out = self.clone();
        for i in other.iter() {
            out.remove(i);
        }
        out
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.same_universe(other)?;
        let mut bits = self.bits.clone();
        bits |= &other.bits;
        Ok(ConstraintSet { bits })
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.same_universe(other)?;
        Ok(self.minus(other))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.same_universe(other)?;
        let mut bits = self.bits.clone();
        bits &= &other.bits;
        Ok(ConstraintSet { bits })
    }
}

/// Bit string, position 0 first: `{c1, c3}` over four constraints prints `1010`.
impl fmt::Display for ConstraintSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits.iter() {
            f.write_str(if *b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for ConstraintSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConstraintSet({self})")
    }
}
