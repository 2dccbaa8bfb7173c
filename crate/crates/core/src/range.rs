//! Range rank, range select and range successor over integer arrays.
//!
//! Values are mapped to their rank among the distinct values, a perfect binary
//! wavelet tree is built over the ranks and contracted to degree `d`. Online
//! queries descend the degree-`d` tree; the offline successor batch works on the
//! binary tree and the big-node lists kept from its construction.

use serde::{Deserialize, Serialize};

use crate::bitpack::PackedList;
use crate::error::{Error, Result};
use crate::rmq::{Extremum, Rmq};
use crate::wavelet::{bits_for, DigitTree, WaveletTree};

pub const DEFAULT_DEGREE: usize = 8;

/// Second layout of the superblock matrices: the cumulative counts of one
/// superblock, viewed as a `d x cols` bit matrix (column 0 = most significant
/// bit), cut into column sections of `width` columns overlapping by four.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SectionMatrices {
    cols: u32,
    width: u32,
    per_superblock: usize,
    sections: Vec<PackedList>,
}

pub const SECTION_OVERLAP: u32 = 4;

impl SectionMatrices {
    fn build(rows: impl Iterator<Item = Vec<u64>>, d: usize, level_len: usize) -> Self {
        let cols = bits_for(level_len as u64 + 1);
        let width = 8u32.max(64 / d as u32);
        let step = width - SECTION_OVERLAP;
        let per_superblock = if cols <= width { 1 } else { (cols - width).div_ceil(step) as usize + 1 };
        let mut sections = Vec::new();
        for row in rows {
            for s in 0..per_superblock {
                let start = s as u32 * step;
                let mut sec = PackedList::with_capacity(width, d).expect("section width");
                for &count in &row {
                    sec.push(column_bits(count, cols, start, width));
                }
                sections.push(sec);
            }
        }
        SectionMatrices { cols, width, per_superblock, sections }
    }

    pub fn columns(&self) -> u32 {
        self.cols
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn sections_per_superblock(&self) -> usize {
        self.per_superblock
    }

    /// Section `s` of superblock `t`: one `width`-bit entry per symbol.
    pub fn section(&self, t: usize, s: usize) -> &PackedList {
        &self.sections[t * self.per_superblock + s]
    }

    /// Reassembles the counts of superblock `t` from its sections.
    pub fn reassemble(&self, t: usize, d: usize) -> Vec<u64> {
        let step = self.width - SECTION_OVERLAP;
        (0..d)
            .map(|c| {
                let mut v = 0u64;
                for col in 0..self.cols {
                    let s = ((col / step) as usize).min(self.per_superblock - 1);
                    let within = col - s as u32 * step;
                    let bit = (self.section(t, s).get(c) >> (self.width - 1 - within)) & 1;
                    v = (v << 1) | bit;
                }
                v
            })
            .collect()
    }
}

/// Columns `[start, start + width)` of `count` written with `cols` bits, MSB first.
fn column_bits(count: u64, cols: u32, start: u32, width: u32) -> u64 {
    let end = start + width;
    let v = if end <= cols { count >> (cols - end) } else { count << (end - cols) };
    v & ((1u64 << width) - 1)
}

/// Big-node lists of the binary tree: for every band depth, the lists S_u of
/// all nodes at that depth concatenated left to right, with range-min and
/// range-max indexes.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BigNodeStore {
    tau: u32,
    depths: Vec<u32>,
    lists: Vec<PackedList>,
    min: Vec<Rmq>,
    max: Vec<Rmq>,
}

impl BigNodeStore {
    pub fn tau(&self) -> u32 {
        self.tau
    }

    pub fn depths(&self) -> &[u32] {
        &self.depths
    }

    /// Concatenated S lists at band index `b`.
    pub fn band(&self, b: usize) -> &PackedList {
        &self.lists[b]
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RangeIndex {
    n: usize,
    /// Sorted distinct values; a stored rank `r` stands for `values[r]`.
    values: Vec<i64>,
    binary: WaveletTree,
    digits: DigitTree,
    sections: Vec<SectionMatrices>,
    big: BigNodeStore,
}

impl RangeIndex {
    /// Builds with degree `d` and big-node stride `tau` (default `max(1, ⌊√log₂σ⌋)`).
    pub fn build(a: &[i64], d: usize, tau: Option<u32>) -> Result<Self> {
        let mut values = a.to_vec();
        values.sort_unstable();
        values.dedup();
        let sigma = (values.len() as u64).max(1);
        let height = bits_for(sigma);
        let ranks: Vec<u64> = a.iter().map(|x| values.partition_point(|v| v < x) as u64).collect();
        let tau = tau.unwrap_or_else(|| ((height as f64).sqrt().floor() as u32).max(1));
        let packed = PackedList::pack(&ranks, height)?;
        let mut depths = Vec::new();
        let mut lists: Vec<PackedList> = Vec::new();
        let binary = WaveletTree::build_binary_with(&packed, sigma, Some(tau), |depth, _, s| {
            if depths.last() != Some(&depth) {
                depths.push(depth);
                lists.push(PackedList::with_capacity(height, a.len()).expect("rank width"));
            }
            lists.last_mut().unwrap().append(s).expect("same width");
        })?;
        let min = lists.iter().map(|l| Rmq::new(l, Extremum::Min)).collect();
        let max = lists.iter().map(|l| Rmq::new(l, Extremum::Max)).collect();
        let digits = DigitTree::build(&binary, d)?;
        let sections = (0..digits.depth())
            .map(|k| {
                let g = digits.level(k);
                SectionMatrices::build((0..g.superblock_count()).map(|t| g.superblock_row(t).to_vec()), d, g.len())
            })
            .collect();
        Ok(RangeIndex { n: a.len(), values, binary, digits, sections, big: BigNodeStore { tau, depths, lists, min, max } })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn degree(&self) -> usize {
        self.digits.degree()
    }

    pub fn digit_tree(&self) -> &DigitTree {
        &self.digits
    }

    pub fn binary_tree(&self) -> &WaveletTree {
        &self.binary
    }

    pub fn sections(&self, level: u32) -> &SectionMatrices {
        &self.sections[level as usize]
    }

    pub fn big_nodes(&self) -> &BigNodeStore {
        &self.big
    }

    /// Distinct values in increasing order.
    pub fn distinct_values(&self) -> &[i64] {
        &self.values
    }

    /// Rank-space value of `x`: the number of distinct values below `x`.
    fn lower(&self, x: i64) -> usize {
        self.values.partition_point(|v| *v < x)
    }

    fn check_range(&self, i: usize, j: usize) -> Result<()> {
        if i == 0 || i > j || j > self.n {
            return Err(Error::InvalidRange { i, j, len: self.n });
        }
        Ok(())
    }

    /// Value at 1-based position `i`.
    pub fn access(&self, i: usize) -> Result<i64> {
        if i == 0 || i > self.n {
            return Err(Error::PositionOutOfRange { pos: i, len: self.n });
        }
        Ok(self.values[self.digits.access(i - 1) as usize])
    }

    /// Number of `k` in `[i, j]` with `A[k] < x`.
    pub fn range_rank(&self, i: usize, j: usize, x: i64) -> Result<usize> {
        self.check_range(i, j)?;
        let r = self.lower(x);
        if r >= self.values.len() {
            return Ok(j - i + 1);
        }
        let dt = &self.digits;
        let (w, pb) = (dt.log_degree(), dt.padded_bits());
        let mask = dt.degree() as u64 - 1;
        let (mut a, mut b) = (i - 1, j);
        let mut prefix = 0u64;
        let mut count = 0;
        for k in 0..dt.depth() {
            let node = dt.node(k, prefix);
            let c = ((r as u64 >> (pb - (k + 1) * w)) & mask) as usize;
            let (below_a, below_b) = if c > 0 { (node.rank(c - 1, a), node.rank(c - 1, b)) } else { (0, 0) };
            count += below_b - below_a;
            a = node.rank(c, a) - below_a;
            b = node.rank(c, b) - below_b;
            prefix = (prefix << w) | c as u64;
            if a == b {
                break;
            }
        }
        Ok(count)
    }

    /// The `k`-th smallest of `A[i..=j]`.
    pub fn range_select(&self, i: usize, j: usize, k: usize) -> Result<i64> {
        self.check_range(i, j)?;
        if k == 0 || k > j - i + 1 {
            return Err(Error::OrdinalOutOfRange { k, count: j - i + 1 });
        }
        let dt = &self.digits;
        let w = dt.log_degree();
        let (mut a, mut b, mut k) = (i - 1, j, k);
        let mut prefix = 0u64;
        for level in 0..dt.depth() {
            let node = dt.node(level, prefix);
            // smallest digit c whose cumulative count over [a, b) reaches k
            let (mut lo, mut hi) = (0usize, dt.degree() - 1);
            while lo < hi {
                let mid = (lo + hi) / 2;
                if node.rank(mid, b) - node.rank(mid, a) >= k {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            let c = lo;
            let (below_a, below_b) = if c > 0 { (node.rank(c - 1, a), node.rank(c - 1, b)) } else { (0, 0) };
            k -= below_b - below_a;
            a = node.rank(c, a) - below_a;
            b = node.rank(c, b) - below_b;
            prefix = (prefix << w) | c as u64;
        }
        Ok(self.values[prefix as usize])
    }

    /// Smallest `A[k] >= c` with `k` in `[i, j]`.
    pub fn range_successor(&self, i: usize, j: usize, c: i64) -> Result<Option<i64>> {
        let r = self.range_rank(i, j, c)?;
        if r == j - i + 1 {
            return Ok(None);
        }
        self.range_select(i, j, r + 1).map(Some)
    }

    /// Answers all `(i, j, c)` successor queries together; equals calling
    /// [`range_successor`](Self::range_successor) on each.
    pub fn range_successor_batch(&self, queries: &[(usize, usize, i64)]) -> Result<Vec<Option<i64>>> {
        for &(i, j, _) in queries {
            self.check_range(i, j)?;
        }
        let sigma = self.values.len();
        let mut out = vec![None; queries.len()];
        let targets: Vec<usize> = queries.iter().map(|q| self.lower(q.2)).collect();
        let mut active: Vec<usize> = (0..queries.len()).filter(|&q| targets[q] < sigma).collect();
        active.sort_by_key(|&q| targets[q]);
        if active.is_empty() {
            return Ok(out);
        }
        let ranges = self.inherited_ranges(queries, &targets, &active);
        let h = self.binary.height();
        let big = &self.big;
        let nb = big.depths.len();
        for (slot, &q) in active.iter().enumerate() {
            let t = targets[q];
            let rs = &ranges[slot * nb..(slot + 1) * nb];
            // deepest big ancestor of t whose range still holds a value >= t
            let mut best = None;
            for (bi, &(lo, hi)) in rs.iter().enumerate() {
                if lo == hi {
                    break;
                }
                let depth = big.depths[bi];
                let base = self.binary.cum((t >> (h - depth)) << (h - depth));
                let list = &big.lists[bi];
                let m = list.get(big.max[bi].query(list, base + lo, base + hi));
                if (m as usize) < t {
                    break;
                }
                best = Some(bi);
            }
            let Some(bi) = best else { continue };
            let rank = self.finish_successor(t, bi, rs[bi]);
            out[q] = Some(self.values[rank]);
        }
        Ok(out)
    }

    /// Inherited ranges at every band depth for each active query, as
    /// `ranges[slot * bands + band]`, found by replaying S-list routing.
    fn inherited_ranges(&self, queries: &[(usize, usize, i64)], targets: &[usize], active: &[usize]) -> Vec<(usize, usize)> {
        let big = &self.big;
        let nb = big.depths.len();
        let h = self.binary.height();
        let mut ranges = vec![(0usize, 0usize); active.len() * nb];
        for (slot, &q) in active.iter().enumerate() {
            ranges[slot * nb] = (queries[q].0 - 1, queries[q].1);
        }
        // event lists, reused across nodes
        let mut head: Vec<u32> = Vec::new();
        let mut next: Vec<u32> = Vec::new();
        let mut events: Vec<(u32, bool)> = Vec::new();
        for bi in 0..nb.saturating_sub(1) {
            let depth = big.depths[bi];
            let width = big.depths[bi + 1] - depth;
            let list = &big.lists[bi];
            let mut start = 0;
            while start < active.len() {
                let label = targets[active[start]] >> (h - depth);
                let mut end = start;
                while end < active.len() && targets[active[end]] >> (h - depth) == label {
                    end += 1;
                }
                let base = self.binary.cum(label << (h - depth));
                let size = self.binary.cum((label + 1) << (h - depth)) - base;
                head.clear();
                head.resize(size + 1, u32::MAX);
                next.clear();
                events.clear();
                for slot in start..end {
                    let (lo, hi) = ranges[slot * nb + bi];
                    for (pos, is_hi) in [(lo, false), (hi, true)] {
                        events.push((slot as u32, is_hi));
                        next.push(head[pos]);
                        head[pos] = (events.len() - 1) as u32;
                    }
                }
                let shift = h - depth - width;
                let wmask = (1usize << width) - 1;
                let mut counters = vec![0usize; 1 << width];
                for pos in 0..=size {
                    let mut e = head[pos];
                    while e != u32::MAX {
                        let (slot, is_hi) = events[e as usize];
                        let slot = slot as usize;
                        let child = (targets[active[slot]] >> shift) & wmask;
                        let r = &mut ranges[slot * nb + bi + 1];
                        if is_hi {
                            r.1 = counters[child];
                        } else {
                            r.0 = counters[child];
                        }
                        e = next[e as usize];
                    }
                    if pos < size {
                        counters[(list.get(base + pos) as usize >> shift) & wmask] += 1;
                    }
                }
                start = end;
            }
        }
        ranges
    }

    /// Finishes a batch query from the deepest qualifying big ancestor at band
    /// `bi`: walk at most `tau` levels toward `t` to find the branching node,
    /// then take the minimum below its right child.
    fn finish_successor(&self, t: usize, bi: usize, (mut lo, mut hi): (usize, usize)) -> usize {
        let h = self.binary.height();
        let big = &self.big;
        let start = big.depths[bi];
        let stop = big.depths.get(bi + 1).copied().unwrap_or(h);
        let mut candidate = None;
        let mut depth = start;
        while depth < stop {
            let label = (t >> (h - depth)) as u64;
            let slice = self.binary.perfect_slice(depth, label);
            let bit = (t >> (h - 1 - depth)) & 1 == 1;
            if !bit {
                let (rl, rh) = (slice.rank1(lo), slice.rank1(hi));
                if rl < rh {
                    candidate = Some((depth + 1, (label << 1) | 1, rl, rh));
                }
            }
            lo = slice.rank(bit, lo);
            hi = slice.rank(bit, hi);
            depth += 1;
            if lo == hi {
                break;
            }
        }
        if depth == h && lo < hi {
            return t;
        }
        let (mut depth, mut label, mut lo, mut hi) = candidate.expect("a qualifying big ancestor contains the successor");
        loop {
            if depth == h {
                return label as usize;
            }
            if depth % big.tau == 0 {
                if let Some(b) = big.depths.iter().position(|&x| x == depth) {
                    let base = self.binary.cum((label as usize) << (h - depth));
                    let list = &big.lists[b];
                    return list.get(big.min[b].query(list, base + lo, base + hi)) as usize;
                }
            }
            let slice = self.binary.perfect_slice(depth, label);
            let (l0, h0) = (slice.rank0(lo), slice.rank0(hi));
            if l0 < h0 {
                (lo, hi, label) = (l0, h0, label << 1);
            } else {
                (lo, hi, label) = (slice.rank1(lo), slice.rank1(hi), (label << 1) | 1);
            }
            depth += 1;
        }
    }
}
