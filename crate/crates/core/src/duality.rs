//! Duality indices and duality words.
//!
//! A [`DualityIndex`] is a set of dimensions at which a self-duality reverses
//! direction. A [`DualityWord`] is the sequence of indices applied to a cell,
//! oldest first. Words are free in the magma; only the quotient cancels and
//! reorders them.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest truncation level representable by the bitmask encoding.
pub const MAX_TRUNCATION: usize = 32;

/// A finite set of dimensions, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct DualityIndex(u32);

impl DualityIndex {
    pub const EMPTY: DualityIndex = DualityIndex(0);

    pub fn from_bits(bits: u32) -> Self {
        DualityIndex(bits)
    }

    /// Builds an index from explicit dimensions, checking each is below `truncation`.
    pub fn new<I: IntoIterator<Item = usize>>(dims: I, truncation: usize) -> Result<Self> {
        let mut bits = 0u32;
        for d in dims {
            if d >= truncation || d >= MAX_TRUNCATION {
                return Err(Error::Index { index: d, truncation });
            }
            bits |= 1 << d;
        }
        Ok(DualityIndex(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, dim: usize) -> bool {
        dim < MAX_TRUNCATION && self.0 & (1 << dim) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn symmetric_difference(self, other: DualityIndex) -> DualityIndex {
        DualityIndex(self.0 ^ other.0)
    }

    /// Largest element plus one, or zero for the empty set.
    pub fn bound(self) -> usize {
        (32 - self.0.leading_zeros()) as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..MAX_TRUNCATION).filter(move |&d| self.contains(d))
    }

    /// Every index available at truncation `n`, in canonical order.
    pub fn all(truncation: usize) -> Vec<DualityIndex> {
        let n = truncation.min(MAX_TRUNCATION - 1);
        let mut out: Vec<_> = (0u32..(1u32 << n)).map(DualityIndex).collect();
        out.sort();
        out
    }
}

impl Ord for DualityIndex {
    /// Cardinality first, then lexicographic on the sorted element lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for DualityIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DualityIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, d) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for DualityIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A sequence of duality indices, applied left to right.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualityWord(Vec<DualityIndex>);

impl DualityWord {
    pub fn empty() -> Self {
        DualityWord(Vec::new())
    }

    pub fn from_indices(indices: Vec<DualityIndex>) -> Self {
        DualityWord(indices)
    }

    pub fn indices(&self) -> &[DualityIndex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, alpha: DualityIndex) {
        self.0.push(alpha);
    }

    /// Appends `alpha` on the right.
    pub fn appended(&self, alpha: DualityIndex) -> Self {
        let mut w = self.clone();
        w.0.push(alpha);
        w
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &DualityWord) -> Self {
        let mut w = self.clone();
        w.0.extend_from_slice(&other.0);
        w
    }

    /// The word without its last index, together with that index.
    pub fn split_last(&self) -> Option<(DualityWord, DualityIndex)> {
        let (last, rest) = self.0.split_last()?;
        Some((DualityWord(rest.to_vec()), *last))
    }

    /// Net variance: the symmetric difference of all indices.
    pub fn delta(&self) -> DualityIndex {
        self.0.iter().fold(DualityIndex::EMPTY, |acc, a| acc.symmetric_difference(*a))
    }

    /// Normal form under the involution and commutation axioms: indices of
    /// odd multiplicity, sorted.
    pub fn normalized(&self) -> Self {
        let mut v = self.0.clone();
        v.sort();
        let mut out: Vec<DualityIndex> = Vec::with_capacity(v.len());
        for a in v {
            if out.last() == Some(&a) {
                out.pop();
            } else {
                out.push(a);
            }
        }
        DualityWord(out)
    }

    pub fn is_normalized(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }

    /// Number of out-of-order pairs; the sorting half of the leaf-word rule
    /// strictly decreases it.
    pub fn inversions(&self) -> usize {
        let mut n = 0;
        for i in 0..self.0.len() {
            for j in i + 1..self.0.len() {
                if self.0[i] > self.0[j] {
                    n += 1;
                }
            }
        }
        n
    }
}

impl fmt::Debug for DualityWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// Symmetric difference of a word's indices.
pub fn delta(word: &DualityWord) -> DualityIndex {
    word.delta()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(d: &[usize]) -> DualityIndex {
        DualityIndex::new(d.iter().copied(), 4).unwrap()
    }

    #[test]
    fn delta_examples() {
        let w = DualityWord::from_indices(vec![idx(&[0]), idx(&[0, 1])]);
        assert_eq!(delta(&w), idx(&[1]));
        assert_eq!(delta(&DualityWord::empty()), DualityIndex::EMPTY);
        let w = DualityWord::from_indices(vec![idx(&[0]), idx(&[0])]);
        assert_eq!(delta(&w), DualityIndex::EMPTY);
    }

    #[test]
    fn index_order_is_cardinality_then_lexicographic() {
        let mut v = vec![idx(&[0, 1]), idx(&[1]), idx(&[]), idx(&[0]), idx(&[0, 2]), idx(&[1, 2])];
        v.sort();
        assert_eq!(v, vec![idx(&[]), idx(&[0]), idx(&[1]), idx(&[0, 1]), idx(&[0, 2]), idx(&[1, 2])]);
        assert_eq!(DualityIndex::all(2), vec![idx(&[]), idx(&[0]), idx(&[1]), idx(&[0, 1])]);
    }

    #[test]
    fn index_range_checked() {
        assert_eq!(DualityIndex::new([2], 2), Err(Error::Index { index: 2, truncation: 2 }));
    }

    #[test]
    fn normalization_cancels_non_adjacent_duplicates() {
        let w = DualityWord::from_indices(vec![idx(&[0]), idx(&[1]), idx(&[0])]);
        assert_eq!(w.normalized(), DualityWord::from_indices(vec![idx(&[1])]));
        let w = DualityWord::from_indices(vec![idx(&[1]), idx(&[0])]);
        assert_eq!(w.normalized(), DualityWord::from_indices(vec![idx(&[0]), idx(&[1])]));
        assert_eq!(w.inversions(), 1);
        assert_eq!(w.normalized().delta(), w.delta());
    }

    #[test]
    fn display() {
        assert_eq!(idx(&[0, 1]).to_string(), "{0,1}");
        assert_eq!(idx(&[]).to_string(), "{}");
    }
}
