//! Wavelet suffix trees: a binary tree over the suffixes of `v$` for a
//! substring `v` of `w`, whose nodes carry string intervals and two bitmasks.
//! Suffixes of any substring `x` of `v` are routed through the tree without
//! being stored, which gives substring suffix rank/select and substring BWT.
//!
//! Tree positions are local to `v` (`1..=|v|+1`, the last one being `$`);
//! query handles are global positions of the shared [`TextIndex`].

mod aux;
mod build;
pub mod query;
mod scaled;

use serde::{Deserialize, Serialize};

pub use aux::EdgeSuffixList;
pub use scaled::{ScaledIndex, NAIVE_SCALE_LIMIT};

use crate::error::{Error, Result};
use crate::stringology::{StringInterval, SubstringHandle, TextIndex};
use crate::wavelet::{BitSlice, ShapeNode, TreeShape, WaveletTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    #[inline]
    pub fn bit(self) -> bool {
        self == Side::Right
    }
}

/// Per-node data; the bitmasks live in the two wavelet trees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WstNode {
    pub level: usize,
    /// Local starts of the smallest and largest suffix below the node.
    pub min_start: u32,
    pub max_start: u32,
    /// `u32::MAX` at the root.
    pub parent: u32,
}

/// Measured bound on `height / log₂(n + 1)`.
pub const HEIGHT_FACTOR: f64 = 3.0;

/// Half-open 0-based range of a node bitmask.
pub type Segment = (usize, usize);

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WaveletSuffixTree {
    /// Length of the indexed text `w`.
    n: usize,
    /// `v = w[off+1..=off+len]`.
    off: usize,
    len: usize,
    nodes: Vec<WstNode>,
    /// Bitmasks over suffixes ordered by start position.
    by_pos: WaveletTree,
    /// Bitmasks over suffixes ordered by (preceding character, start).
    by_char: WaveletTree,
    /// Local starts sorted by (preceding code, start); `$` precedes start 1.
    char_sorted_starts: Vec<u32>,
    /// (preceding code, first index into `char_sorted_starts`), by code.
    buckets: Vec<(u32, u32)>,
    /// Leaf node ids from left to right.
    leaves: Vec<u32>,
}

impl WaveletSuffixTree {
    /// Tree over all suffixes of `w$`.
    pub fn build(ti: &TextIndex) -> Result<Self> {
        build::build(ti, 0, ti.len())
    }

    /// Tree over the suffixes of `w[start..=end]$` (`1 <= start <= end <= n`).
    pub fn build_range(ti: &TextIndex, start: usize, end: usize) -> Result<Self> {
        if start == 0 || start > end || end > ti.len() {
            return Err(Error::InvalidSubstring { start, end, len: ti.len() });
        }
        build::build(ti, start - 1, end + 1 - start)
    }

    /// Global position range `(first, last)` of the indexed substring.
    pub fn span(&self) -> (usize, usize) {
        (self.off + 1, self.off + self.len)
    }

    pub fn shape(&self) -> &TreeShape {
        self.by_pos.shape().expect("suffix tree bitmasks are shaped")
    }

    pub fn root(&self) -> usize {
        self.shape().root()
    }

    pub fn node(&self, u: usize) -> &WstNode {
        &self.nodes[u]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn height(&self) -> u32 {
        self.shape().height()
    }

    pub fn children(&self, u: usize) -> Option<(usize, usize)> {
        self.shape().children(u)
    }

    pub fn child(&self, u: usize, side: Side) -> Option<usize> {
        self.children(u).map(|(l, r)| if side.bit() { r } else { l })
    }

    pub fn parent(&self, u: usize) -> Option<usize> {
        let p = self.nodes[u].parent;
        (p != u32::MAX).then_some(p as usize)
    }

    /// Which child of its parent `u` is.
    pub fn side_of(&self, u: usize) -> Option<Side> {
        let p = self.parent(u)?;
        Some(if self.children(p).unwrap().0 == u { Side::Left } else { Side::Right })
    }

    /// Global start of the suffix at leaf `u`.
    pub fn leaf_start(&self, u: usize) -> Option<usize> {
        match self.shape().node(u) {
            ShapeNode::Leaf { symbol } => Some(self.off + symbol as usize + 1),
            ShapeNode::Inner { .. } => None,
        }
    }

    /// Global starts of the leaves from left to right.
    pub fn leaf_starts(&self) -> Vec<usize> {
        self.leaves.iter().map(|&u| self.leaf_start(u as usize).unwrap()).collect()
    }

    pub fn bitmask_pos(&self, u: usize) -> BitSlice<'_> {
        self.by_pos.node_slice(u)
    }

    pub fn bitmask_char(&self, u: usize) -> BitSlice<'_> {
        self.by_char.node_slice(u)
    }

    pub fn char_sorted_starts(&self) -> Vec<usize> {
        self.char_sorted_starts.iter().map(|&k| self.off + k as usize).collect()
    }

    /// Total bitmask bits over both orderings.
    pub fn total_bits(&self) -> usize {
        self.by_pos.total_bits() + self.by_char.total_bits()
    }

    /// Restores lookup dictionaries after deserialization.
    pub fn rebuild_lookup(&mut self) {
        self.by_pos.rebuild_lookup();
        self.by_char.rebuild_lookup();
    }

    /// `v[k..]$` for the global start `k` in `off+1..=off+len+1`.
    pub(crate) fn suffix_handle(&self, ti: &TextIndex, k: usize) -> SubstringHandle {
        ti.capped_unchecked(k, self.off + self.len)
    }

    /// `I(u)`: strings between the smallest and largest suffix below `u`, trimmed to `ℓ(u)`.
    pub fn node_interval(&self, ti: &TextIndex, u: usize) -> StringInterval {
        let d = &self.nodes[u];
        StringInterval::closed(self.local_suffix(ti, d.min_start), self.local_suffix(ti, d.max_start), d.level)
    }

    /// `I(e)` for the edge from the parent of `c` into `c`.
    pub fn edge_interval(&self, ti: &TextIndex, c: usize) -> StringInterval {
        let p = self.parent(c).expect("the root has no incoming edge");
        let (l, _) = self.children(p).unwrap();
        let (dp, dl) = (&self.nodes[p], &self.nodes[l]);
        let split = self.local_suffix(ti, dl.max_start);
        if c == l {
            StringInterval::closed(self.local_suffix(ti, dp.min_start), split, dp.level)
        } else {
            StringInterval { low: split, high: self.local_suffix(ti, dp.max_start), trim: dp.level, low_open: true, high_open: false }
        }
    }

    /// Strings of `I(e)` that sort below all of `I(c)`.
    pub(crate) fn below_interval(&self, ti: &TextIndex, c: usize) -> StringInterval {
        let d = &self.nodes[c];
        StringInterval {
            low: SubstringHandle::EMPTY,
            high: self.local_suffix(ti, d.min_start),
            trim: d.level,
            low_open: false,
            high_open: true,
        }
    }

    /// Longest common prefix of all strings in `I(u)`.
    pub fn common_prefix(&self, ti: &TextIndex, u: usize) -> SubstringHandle {
        let d = &self.nodes[u];
        let (a, b) = (self.local_suffix(ti, d.min_start), self.local_suffix(ti, d.max_start));
        a.prefix(ti.lcp(a, b).min(d.level))
    }

    fn local_suffix(&self, ti: &TextIndex, k: u32) -> SubstringHandle {
        self.suffix_handle(ti, self.off + k as usize)
    }

    /// Code of the character before global start `k` inside `v$` (`$` before `v`).
    #[inline]
    pub(crate) fn preceding(&self, ti: &TextIndex, k: usize) -> u32 {
        if k == self.off + 1 {
            0
        } else {
            ti.code(k - 1)
        }
    }

    /// Checks that `x` is a non-empty plain substring of `v` and that `ti` indexes the same text.
    pub(crate) fn check_query(&self, ti: &TextIndex, x: SubstringHandle) -> Result<()> {
        if ti.len() != self.n {
            return Err(Error::Invariant(format!("tree built for length {} used with length {}", self.n, ti.len())));
        }
        if x.is_empty() || x.sentinel || x.start <= self.off || x.end > self.off + self.len || x.start > x.end {
            return Err(Error::InvalidSubstring { start: x.start, end: x.end, len: self.n });
        }
        Ok(())
    }

    /// First-bitmask segment of the root for suffixes starting in `x`.
    pub fn root_segment(&self, x: SubstringHandle) -> Segment {
        (x.start - self.off - 1, x.end - self.off)
    }

    /// Second-bitmask segment of the root for starts in `x` preceded by `code`.
    pub fn root_char_segment(&self, x: SubstringHandle, code: u32) -> Segment {
        let Ok(b) = self.buckets.binary_search_by_key(&code, |&(c, _)| c) else {
            return (0, 0);
        };
        let begin = self.buckets[b].1 as usize;
        let end = self.buckets.get(b + 1).map_or(self.char_sorted_starts.len(), |&(_, s)| s as usize);
        let bucket = &self.char_sorted_starts[begin..end];
        let (a, z) = ((x.start - self.off) as u32, (x.end - self.off) as u32);
        (begin + bucket.partition_point(|&k| k < a), begin + bucket.partition_point(|&k| k <= z))
    }

    /// Segment of child `side` given the segment of `u` in the same ordering.
    pub fn child_segment(&self, u: usize, side: Side, seg: Segment, by_char: bool) -> Segment {
        let s = if by_char { self.bitmask_char(u) } else { self.bitmask_pos(u) };
        (s.rank(side.bit(), seg.0), s.rank(side.bit(), seg.1))
    }
}
