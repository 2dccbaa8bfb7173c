use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::{BitSlice, WaveletTree};
use crate::bitpack::{low_mask, PackedList};
use crate::error::{Error, Result};

pub const DIGIT_BLOCK: usize = 256;
/// Superblocks hold `d * DIGIT_SUPERBLOCK_FACTOR` digits.
pub const DIGIT_SUPERBLOCK_FACTOR: usize = 4096;

/// Rank over a digit string where `rank(c, i)` counts digits `<= c` among
/// the first `i`, and `select(c, k)` finds the `k`-th digit equal to `c`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneralizedRankSelect {
    digits: PackedList,
    d: usize,
    sb_len: usize,
    /// `sb[t * d + c]`: digits `<= c` before superblock `t`.
    sb: Vec<u64>,
    /// `blk[b * d + c]`: digits `<= c` from the superblock start to block `b`.
    blk: Vec<u32>,
}

/// Counts of digits `<= c` inside one 16-bit chunk, for widths up to 4.
/// Indexed `[c << chunk_bits | chunk]`.
fn count_table(width: u32) -> &'static [u8] {
    static TABLES: [OnceLock<Box<[u8]>>; 4] = [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    TABLES[width as usize - 1].get_or_init(|| {
        let g = 16 / width;
        let cb = g * width;
        let d = 1u64 << width;
        let mut t = vec![0u8; (d as usize) << cb];
        for c in 0..d {
            for chunk in 0..1u64 << cb {
                let n = (0..g).filter(|k| (chunk >> (k * width)) & (d - 1) <= c).count();
                t[((c as usize) << cb) | chunk as usize] = n as u8;
            }
        }
        t.into_boxed_slice()
    })
}

impl GeneralizedRankSelect {
    pub fn new(digits: PackedList) -> Self {
        let w = digits.width();
        let d = 1usize << w;
        let sb_len = d * DIGIT_SUPERBLOCK_FACTOR;
        let n = digits.len();
        let nblocks = n / DIGIT_BLOCK + 1;
        let mut sb = Vec::with_capacity((n / sb_len + 1) * d);
        let mut blk = Vec::with_capacity(nblocks * d);
        let mut total = vec![0u64; d];
        let mut local = vec![0u64; d];
        let blocks_per_sb = sb_len / DIGIT_BLOCK;
        for b in 0..nblocks {
            if b % blocks_per_sb == 0 {
                let mut acc = 0;
                for c in 0..d {
                    total[c] += local[c];
                    local[c] = 0;
                }
                for &t in total.iter() {
                    acc += t;
                    sb.push(acc);
                }
            }
            let mut acc = 0;
            for &l in local.iter() {
                acc += l;
                blk.push(acc as u32);
            }
            for i in b * DIGIT_BLOCK..((b + 1) * DIGIT_BLOCK).min(n) {
                local[digits.get(i) as usize] += 1;
            }
        }
        GeneralizedRankSelect { digits, d, sb_len, sb, blk }
    }

    pub fn digits(&self) -> &PackedList {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn superblock_len(&self) -> usize {
        self.sb_len
    }

    pub fn superblock_count(&self) -> usize {
        self.sb.len() / self.d
    }

    /// Cumulative `<= c` counts at the start of superblock `t`.
    pub fn superblock_row(&self, t: usize) -> &[u64] {
        &self.sb[t * self.d..(t + 1) * self.d]
    }

    /// In-superblock cumulative `<= c` counts at the start of block `b`.
    pub fn block_row(&self, b: usize) -> &[u32] {
        &self.blk[b * self.d..(b + 1) * self.d]
    }

    /// Digits `<= c` in `[from, to)`, both inside one block.
    fn count_le(&self, c: usize, from: usize, to: usize) -> usize {
        let w = self.digits.width();
        if w > 4 {
            return (from..to).filter(|&i| self.digits.get(i) as usize <= c).count();
        }
        let table = count_table(w);
        let g = (16 / w) as usize;
        let cb = g as u32 * w;
        let row = c << cb;
        let mut cnt = 0;
        let mut pos = from;
        while pos + g <= to {
            cnt += table[row | self.digits.raw_bits(pos, cb) as usize] as usize;
            pos += g;
        }
        if pos < to {
            let r = to - pos;
            // missing high slots read as digit 0, which is always <= c
            cnt += table[row | self.digits.raw_bits(pos, r as u32 * w) as usize] as usize - (g - r);
        }
        cnt
    }

    /// Digits `<= c` among the first `i`.
    #[inline]
    pub fn rank(&self, c: usize, i: usize) -> usize {
        debug_assert!(i <= self.len());
        if c + 1 >= self.d {
            return i;
        }
        let b = i / DIGIT_BLOCK;
        let t = i / self.sb_len;
        self.sb[t * self.d + c] as usize + self.blk[b * self.d + c] as usize + self.count_le(c, b * DIGIT_BLOCK, i)
    }

    /// Digits equal to `c` among the first `i`.
    #[inline]
    pub fn rank_exact(&self, c: usize, i: usize) -> usize {
        let r = self.rank(c, i);
        if c == 0 {
            r
        } else {
            r - self.rank(c - 1, i)
        }
    }

    pub fn count(&self, c: usize) -> usize {
        self.rank_exact(c, self.len())
    }

    /// 1-based position of the `k`-th digit equal to `c`.
    pub fn select(&self, c: usize, k: usize) -> Option<usize> {
        if c >= self.d || k == 0 || k > self.count(c) {
            return None;
        }
        let d = self.d;
        let exact_sb = |t: usize| {
            let row = &self.sb[t * d..(t + 1) * d];
            (row[c] - if c > 0 { row[c - 1] } else { 0 }) as usize
        };
        // last superblock starting with fewer than k occurrences before it
        let (mut lo, mut hi) = (0, self.superblock_count());
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if exact_sb(mid) < k {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let t = lo;
        let before = exact_sb(t);
        let exact_blk = |b: usize| {
            let row = &self.blk[b * d..(b + 1) * d];
            (row[c] - if c > 0 { row[c - 1] } else { 0 }) as usize
        };
        let bps = self.sb_len / DIGIT_BLOCK;
        let first = t * bps;
        let last = ((t + 1) * bps).min(self.blk.len() / d);
        let (mut lo, mut hi) = (first, last);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if before + exact_blk(mid) < k {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut seen = before + exact_blk(lo);
        let mut i = lo * DIGIT_BLOCK;
        loop {
            if self.digits.get(i) as usize == c {
                seen += 1;
                if seen == k {
                    return Some(i + 1);
                }
            }
            i += 1;
        }
    }
}

/// The digit string of one node: a slice of its level.
#[derive(Clone, Copy, Debug)]
pub struct DigitSlice<'a> {
    g: &'a GeneralizedRankSelect,
    off: usize,
    len: usize,
}

impl<'a> DigitSlice<'a> {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn offset(&self) -> usize {
        self.off
    }

    pub fn level(&self) -> &'a GeneralizedRankSelect {
        self.g
    }

    pub fn get(&self, i: usize) -> u64 {
        self.g.digits.get(self.off + i)
    }

    /// Digits `<= c` among the first `i` of this node.
    #[inline]
    pub fn rank(&self, c: usize, i: usize) -> usize {
        self.g.rank(c, self.off + i) - self.g.rank(c, self.off)
    }

    /// 1-based position of the `k`-th `c` in this node.
    pub fn select(&self, c: usize, k: usize) -> Option<usize> {
        let base = self.g.rank_exact(c, self.off);
        let p = self.g.select(c, base + k)?;
        (k > 0 && p <= self.off + self.len).then(|| p - self.off)
    }

    pub fn to_vec(&self) -> Vec<u64> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

/// Degree-`d` contraction of a perfect binary wavelet tree: a node at digit
/// depth k stores the k-th group of `log d` label bits of its symbols.
/// When `log d` does not divide the height, labels get extra leading zero bits.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DigitTree {
    d: usize,
    log_d: u32,
    n: usize,
    padded_bits: u32,
    levels: Vec<GeneralizedRankSelect>,
    cum: Vec<usize>,
}

fn pdep8_table() -> &'static [u8] {
    static T: OnceLock<Box<[u8]>> = OnceLock::new();
    T.get_or_init(|| {
        let mut t = vec![0u8; 1 << 16];
        for mask in 0..256usize {
            for src in 0..256usize {
                let (mut out, mut k) = (0u8, 0);
                for bit in 0..8 {
                    if (mask >> bit) & 1 == 1 {
                        out |= (((src >> k) & 1) as u8) << bit;
                        k += 1;
                    }
                }
                t[(mask << 8) | src] = out;
            }
        }
        t.into_boxed_slice()
    })
}

/// Deposits the low bits of `src` into the set positions of `mask`.
#[inline]
fn pdep(mut src: u64, mask: u64) -> u64 {
    let t = pdep8_table();
    let mut out = 0;
    for byte in 0..8 {
        let m = ((mask >> (byte * 8)) & 0xff) as usize;
        if m != 0 {
            out |= (t[(m << 8) | (src & 0xff) as usize] as u64) << (byte * 8);
            src >>= m.count_ones();
        }
    }
    out
}

/// `[w - 1][byte]`: slot mask of the 0-bits of `byte`, each slot `w` bits wide.
fn slot_masks() -> &'static [u64] {
    static T: OnceLock<Box<[u64]>> = OnceLock::new();
    T.get_or_init(|| {
        let mut t = vec![0u64; 8 * 256];
        for w in 1..=8u32 {
            let slot = (1u64 << w) - 1;
            for b in 0..256usize {
                t[(w as usize - 1) * 256 + b] = (0..8).filter(|i| (b >> i) & 1 == 0).fold(0, |m, i| m | slot << (i * w));
            }
        }
        t.into_boxed_slice()
    })
}

/// Merges `left` and `right` following `bits` (0 takes from left, 1 from
/// right), setting bit `top` of every character taken from `right`.
fn interleave(left: &PackedList, right: &PackedList, bits: &BitSlice<'_>, top: u32) -> PackedList {
    let w = left.width();
    let n = bits.len();
    let mut out = PackedList::with_capacity(w, n).expect("digit width");
    let (mut i0, mut i1, mut i) = (0, 0, 0);
    if w <= 8 {
        let masks = slot_masks();
        let rep = (0..8).fold(0u64, |m, k| m | 1 << (k * w)) << top;
        while i + 8 <= n {
            let b = bits.read(i, 8) as usize;
            let ones = b.count_ones() as usize;
            let zeros = 8 - ones;
            let m0 = masks[(w as usize - 1) * 256 + b];
            let full = low_mask(8 * w);
            let src0 = left.raw_bits(i0, zeros as u32 * w);
            let src1 = right.raw_bits(i1, ones as u32 * w) | (rep & low_mask(ones as u32 * w));
            out.push_packed(pdep(src0, m0) | pdep(src1, full & !m0), 8);
            i0 += zeros;
            i1 += ones;
            i += 8;
        }
    }
    while i < n {
        if bits.get(i) {
            out.push(right.get(i1) | (1 << top));
            i1 += 1;
        } else {
            out.push(left.get(i0));
            i0 += 1;
        }
        i += 1;
    }
    out
}

impl DigitTree {
    /// Contracts the perfect binary tree `wt` to degree `d`.
    pub fn build(wt: &WaveletTree, d: usize) -> Result<Self> {
        if d < 2 || !d.is_power_of_two() || d > 1 << 16 {
            return Err(Error::InvalidDegree(d));
        }
        if !wt.is_perfect() {
            return Err(Error::InvalidShape("degree-d contraction needs a perfect tree".into()));
        }
        let log_d = d.trailing_zeros();
        let h = wt.height();
        let m = h.div_ceil(log_d);
        let padded_bits = m * log_d;
        let pad = padded_bits - h;
        let n = wt.len();
        let cum: Vec<usize> = (0..=(1usize << h)).map(|c| wt.cum(c)).collect();
        let builder = Builder { wt, cum: &cum, n, pad, padded_bits };
        let mut levels = Vec::with_capacity(m as usize);
        for k in 0..m {
            let depth = k * log_d;
            let count = if depth < pad { 1 } else { 1u64 << (depth - pad) };
            let mut level = PackedList::with_capacity(log_d, n)?;
            for p in 0..count {
                level.append(&builder.dprime(depth, p, log_d, log_d))?;
            }
            levels.push(GeneralizedRankSelect::new(level));
        }
        Ok(DigitTree { d, log_d, n, padded_bits, levels, cum })
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn log_degree(&self) -> u32 {
        self.log_d
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Number of digit levels.
    pub fn depth(&self) -> u32 {
        self.levels.len() as u32
    }

    /// Label bits after padding to a multiple of `log d`.
    pub fn padded_bits(&self) -> u32 {
        self.padded_bits
    }

    pub fn level(&self, k: u32) -> &GeneralizedRankSelect {
        &self.levels[k as usize]
    }

    #[inline]
    fn cum_at(&self, x: u128) -> usize {
        if x >= (self.cum.len() - 1) as u128 {
            self.n
        } else {
            self.cum[x as usize]
        }
    }

    /// Digit string of the node at digit depth `k` whose label is `prefix`
    /// (`k * log d` bits of the padded label).
    #[inline]
    pub fn node(&self, k: u32, prefix: u64) -> DigitSlice<'_> {
        let shift = self.padded_bits - k * self.log_d;
        let lo = self.cum_at((prefix as u128) << shift);
        let hi = self.cum_at((prefix as u128 + 1) << shift);
        DigitSlice { g: &self.levels[k as usize], off: lo, len: hi - lo }
    }

    /// Reconstructs `s[i]` (0-based) digit by digit.
    pub fn access(&self, i: usize) -> u64 {
        let mut p = i;
        let mut prefix = 0u64;
        for k in 0..self.depth() {
            let node = self.node(k, prefix);
            let c = node.get(p) as usize;
            p = node.rank(c, p) - if c > 0 { node.rank(c - 1, p) } else { 0 };
            prefix = (prefix << self.log_d) | c as u64;
        }
        prefix
    }
}

struct Builder<'a> {
    wt: &'a WaveletTree,
    cum: &'a [usize],
    n: usize,
    pad: u32,
    padded_bits: u32,
}

impl Builder<'_> {
    fn size(&self, depth: u32, label: u64) -> usize {
        let shift = self.padded_bits - depth;
        let at = |x: u128| if x >= (self.cum.len() - 1) as u128 { self.n } else { self.cum[x as usize] };
        at((label as u128 + 1) << shift) - at((label as u128) << shift)
    }

    /// Temporary string D' of the binary node at padded `depth` with `label`:
    /// the next `delta` label bits of each of its symbols.
    fn dprime(&self, depth: u32, label: u64, delta: u32, w: u32) -> PackedList {
        if delta == 0 {
            return PackedList::zeros(w, self.size(depth, label)).expect("digit width");
        }
        let left = self.dprime(depth + 1, label << 1, delta - 1, w);
        if depth < self.pad {
            // virtual level above the real root: every symbol goes left
            return left;
        }
        let right = self.dprime(depth + 1, (label << 1) | 1, delta - 1, w);
        let bits = self.wt.perfect_slice(depth - self.pad, label);
        interleave(&left, &right, &bits, delta - 1)
    }
}
