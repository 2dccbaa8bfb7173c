//! Binary, arbitrarily-shaped and degree-d wavelet trees.

mod build;
mod digit;
mod shape;
mod tree;

pub use digit::{DigitSlice, DigitTree, GeneralizedRankSelect, DIGIT_BLOCK, DIGIT_SUPERBLOCK_FACTOR};
pub use shape::{ShapeNode, TreeShape, MAX_SHAPE_HEIGHT};
pub use tree::WaveletTree;

use crate::bitpack::{BitVector, RankSelect};

/// Bits needed for symbols in `[0, sigma)`, at least 1.
pub fn bits_for(sigma: u64) -> u32 {
    if sigma <= 2 {
        1
    } else {
        64 - (sigma - 1).leading_zeros()
    }
}

/// Big-node stride `max(1, ⌊√⌊log₂ n⌋⌋)`.
pub fn default_tau(n: usize) -> u32 {
    if n < 2 {
        return 1;
    }
    let lg = 63 - (n as u64).leading_zeros();
    ((lg as f64).sqrt().floor() as u32).max(1)
}

/// A node bitmask: the slice `[off, off + len)` of a level bitvector.
#[derive(Clone, Copy, Debug)]
pub struct BitSlice<'a> {
    rs: &'a RankSelect,
    off: usize,
    len: usize,
    base1: usize,
}

impl<'a> BitSlice<'a> {
    pub fn new(rs: &'a RankSelect, off: usize, len: usize) -> Self {
        BitSlice { rs, off, len, base1: rs.rank1(off) }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.rs.get(self.off + i)
    }

    #[inline]
    pub fn rank1(&self, i: usize) -> usize {
        debug_assert!(i <= self.len);
        self.rs.rank1(self.off + i) - self.base1
    }

    #[inline]
    pub fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }

    #[inline]
    pub fn rank(&self, b: bool, i: usize) -> usize {
        if b {
            self.rank1(i)
        } else {
            self.rank0(i)
        }
    }

    pub fn count(&self, b: bool) -> usize {
        self.rank(b, self.len)
    }

    /// 1-based position of the `k`-th `b` inside the slice.
    pub fn select(&self, b: bool, k: usize) -> Option<usize> {
        if k == 0 || k > self.count(b) {
            return None;
        }
        let base = if b { self.base1 } else { self.off - self.base1 };
        self.rs.select(b, base + k).map(|p| p - self.off)
    }

    /// `n <= 64` raw bits starting at slice index `i`.
    #[inline]
    pub(crate) fn read(&self, i: usize, n: u32) -> u64 {
        self.rs.bits().read(self.off + i, n)
    }

    pub fn to_bitvector(&self) -> BitVector {
        BitVector::from_bits((0..self.len).map(|i| self.get(i)))
    }
}
