//! Packed fixed-width integer lists, plain bitvectors and rank/select indexes.
//!
//! Bits and entries are stored low-to-high inside 64-bit words. Public rank and
//! select use 1-based positions: `rank(b, i)` counts `b` in the first `i` bits and
//! `select(b, k)` returns the position of the `k`-th `b`.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[inline]
pub(crate) fn low_mask(n: u32) -> u64 {
    if n >= 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

/// Appends the low `n` bits of `value` (n <= 64) at bit offset `bitlen`.
#[inline]
fn write_tail(words: &mut Vec<u64>, bitlen: usize, value: u64, n: u32) {
    if n == 0 {
        return;
    }
    let off = (bitlen % 64) as u32;
    if off == 0 {
        words.push(value);
    } else {
        *words.last_mut().unwrap() |= value << off;
        if off + n > 64 {
            words.push(value >> (64 - off));
        }
    }
}

/// Reads `n` bits (n <= 64) starting at bit `pos`.
#[inline]
fn read_bits(words: &[u64], pos: usize, n: u32) -> u64 {
    if n == 0 {
        return 0;
    }
    let w = pos / 64;
    let off = (pos % 64) as u32;
    let mut v = words[w] >> off;
    if off + n > 64 {
        v |= words[w + 1] << (64 - off);
    }
    v & low_mask(n)
}

/// Splices `src_bits` bits of `src` onto the end of `dst` word by word.
fn splice(dst: &mut Vec<u64>, dst_bits: usize, src: &[u64], src_bits: usize) {
    if src_bits == 0 {
        return;
    }
    let off = (dst_bits % 64) as u32;
    let src_words = src_bits.div_ceil(64);
    if off == 0 {
        dst.extend_from_slice(&src[..src_words]);
    } else {
        for &w in &src[..src_words] {
            *dst.last_mut().unwrap() |= w << off;
            dst.push(w >> (64 - off));
        }
    }
    dst.truncate((dst_bits + src_bits).div_ceil(64));
}

/// A list of `width`-bit integers packed densely into words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackedList {
    width: u32,
    len: usize,
    words: Vec<u64>,
}

impl PackedList {
    pub fn new(width: u32) -> Result<Self> {
        if width == 0 || width >= 64 {
            return Err(Error::InvalidWidth(width));
        }
        Ok(PackedList { width, len: 0, words: Vec::new() })
    }

    pub fn zeros(width: u32, len: usize) -> Result<Self> {
        let mut l = Self::new(width)?;
        l.words = vec![0; (len * width as usize).div_ceil(64)];
        l.len = len;
        Ok(l)
    }

    pub fn with_capacity(width: u32, cap: usize) -> Result<Self> {
        let mut l = Self::new(width)?;
        l.words.reserve((cap * width as usize).div_ceil(64));
        Ok(l)
    }

    pub fn pack(values: &[u64], width: u32) -> Result<Self> {
        let mut l = Self::with_capacity(width, values.len())?;
        for (index, &value) in values.iter().enumerate() {
            if value >> width != 0 {
                return Err(Error::ValueOutOfRange { index, value, width });
            }
            l.push(value);
        }
        Ok(l)
    }

    #[inline]
    pub fn width(&self) -> u32 {
        self.width
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Entry at 0-based index `i`.
    #[inline]
    pub fn get(&self, i: usize) -> u64 {
        assert!(i < self.len, "index {i} out of bounds for length {}", self.len);
        read_bits(&self.words, i * self.width as usize, self.width)
    }

    #[inline]
    pub fn push(&mut self, v: u64) {
        debug_assert!(v >> self.width == 0);
        write_tail(&mut self.words, self.len * self.width as usize, v, self.width);
        self.len += 1;
    }

    /// Appends `count` entries already packed in the low bits of `bits`.
    #[inline]
    pub(crate) fn push_packed(&mut self, bits: u64, count: usize) {
        let n = count as u32 * self.width;
        write_tail(&mut self.words, self.len * self.width as usize, bits, n);
        self.len += count;
    }

    /// Reads `n <= 64` raw bits starting at entry `i`.
    #[inline]
    pub(crate) fn raw_bits(&self, i: usize, n: u32) -> u64 {
        read_bits(&self.words, i * self.width as usize, n)
    }

    /// Appends all entries of `src`; the cost is linear in the words of `src`.
    pub fn append(&mut self, src: &PackedList) -> Result<()> {
        if src.width != self.width {
            return Err(Error::WidthMismatch(self.width, src.width));
        }
        let w = self.width as usize;
        splice(&mut self.words, self.len * w, &src.words, src.len * w);
        self.len += src.len;
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn unpack(&self) -> Vec<u64> {
        self.iter().collect()
    }

    /// Splits the list by the `t`-th most significant bit of each entry
    /// (t = 0 is the top bit). Returns the 0-side, the 1-side and the bits.
    pub fn partition_by_bit(&self, t: u32) -> Result<(PackedList, PackedList, BitVector)> {
        if t >= self.width {
            return Err(Error::BitOutOfRange { t, width: self.width });
        }
        let mut l0 = PackedList::with_capacity(self.width, self.len / 2)?;
        let mut l1 = PackedList::with_capacity(self.width, self.len / 2)?;
        let mut bits = BitVector::with_capacity(self.len);
        let shift = self.width - 1 - t;
        let mut i = 0;
        if let Some(table) = partition_table(self.width, t) {
            let g = entries_per_chunk(self.width);
            let cb = g as u32 * self.width;
            while i + g <= self.len {
                let chunk = self.raw_bits(i, cb);
                let e = table[chunk as usize];
                let nz = ((e >> 48) & 0xff) as usize;
                l0.push_packed(e & 0xffff, nz);
                l1.push_packed((e >> 16) & 0xffff, g - nz);
                bits.push_bits((e >> 32) & 0xffff, g);
                i += g;
            }
        }
        while i < self.len {
            let v = self.get(i);
            if (v >> shift) & 1 == 1 {
                l1.push(v);
                bits.push(true);
            } else {
                l0.push(v);
                bits.push(false);
            }
            i += 1;
        }
        Ok((l0, l1, bits))
    }
}

/// Chunk width used by the partition tables.
pub const CHUNK_BITS: u32 = 16;

#[inline]
fn entries_per_chunk(width: u32) -> usize {
    (CHUNK_BITS / width) as usize
}

/// Table entry layout: zeros packed [0,16), ones packed [16,32), bits [32,48),
/// zero count [48,56).
fn build_partition_table(width: u32, t: u32) -> Box<[u64]> {
    let g = entries_per_chunk(width);
    let cb = g as u32 * width;
    let shift = width - 1 - t;
    let mask = low_mask(width);
    (0..1u64 << cb)
        .map(|chunk| {
            let (mut z, mut o, mut bits) = (0u64, 0u64, 0u64);
            let (mut nz, mut no) = (0u32, 0u32);
            for k in 0..g as u32 {
                let v = (chunk >> (k * width)) & mask;
                if (v >> shift) & 1 == 1 {
                    o |= v << (no * width);
                    no += 1;
                    bits |= 1 << k;
                } else {
                    z |= v << (nz * width);
                    nz += 1;
                }
            }
            z | (o << 16) | (bits << 32) | ((nz as u64) << 48)
        })
        .collect()
}

#[allow(clippy::declare_interior_mutable_const)]
const EMPTY_TABLE: OnceLock<Box<[u64]>> = OnceLock::new();
#[allow(clippy::declare_interior_mutable_const)]
const EMPTY_ROW: [OnceLock<Box<[u64]>>; 8] = [EMPTY_TABLE; 8];
static PARTITION_TABLES: [[OnceLock<Box<[u64]>>; 8]; 8] = [EMPTY_ROW; 8];

/// Shared lookup table for widths that fit at least two entries in a chunk.
pub(crate) fn partition_table(width: u32, t: u32) -> Option<&'static [u64]> {
    if width > CHUNK_BITS / 2 {
        return None;
    }
    Some(PARTITION_TABLES[width as usize - 1][t as usize].get_or_init(|| build_partition_table(width, t)))
}

/// A plain bit sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        BitVector { len: 0, words: Vec::with_capacity(bits.div_ceil(64)) }
    }

    pub fn zeros(len: usize) -> Self {
        BitVector { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(it: I) -> Self {
        let mut b = BitVector::new();
        for x in it {
            b.push(x);
        }
        b
    }

    /// Parses a string of '0'/'1' characters; other characters are ignored.
    pub fn from_str_bits(s: &str) -> Self {
        Self::from_bits(s.chars().filter(|c| *c == '0' || *c == '1').map(|c| c == '1'))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn push(&mut self, b: bool) {
        if self.len.is_multiple_of(64) {
            self.words.push(b as u64);
        } else if b {
            *self.words.last_mut().unwrap() |= 1 << (self.len % 64);
        }
        self.len += 1;
    }

    /// Appends the low `n` bits of `bits`, lowest first.
    #[inline]
    pub fn push_bits(&mut self, bits: u64, n: usize) {
        write_tail(&mut self.words, self.len, bits & low_mask(n as u32), n as u32);
        self.len += n;
    }

    pub fn append(&mut self, other: &BitVector) {
        splice(&mut self.words, self.len, &other.words, other.len);
        self.len += other.len;
    }

    /// Bit at 0-based index `i`.
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of bounds for length {}", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    /// `n <= 64` bits starting at 0-based bit `pos`, lowest first.
    #[inline]
    pub(crate) fn read(&self, pos: usize, n: u32) -> u64 {
        debug_assert!(pos + n as usize <= self.len);
        read_bits(&self.words, pos, n)
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        assert!(i < self.len);
        if b {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Word `idx` with every bit complemented when `b` is false; bits past
    /// the end read as zero either way.
    #[inline]
    fn word_for(&self, b: bool, idx: usize) -> u64 {
        let w = self.words[idx];
        if b {
            w
        } else {
            let valid = self.len - idx * 64;
            !w & low_mask(valid.min(64) as u32)
        }
    }
}

impl std::fmt::Display for BitVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

pub const SUPERBLOCK_BITS: usize = 1 << 16;
pub const BLOCK_BITS: usize = 512;
const BLOCKS_PER_SUPERBLOCK: usize = SUPERBLOCK_BITS / BLOCK_BITS;
/// Every `SAMPLE_RATE`-th occurrence starts a select group.
pub const SAMPLE_RATE: usize = 8192;
/// Sub-sampling inside dense groups.
pub const SUB_RATE: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
enum SubBlock {
    /// Positions relative to the group start.
    Sparse(Vec<u32>),
    /// Position of the first occurrence relative to the group start.
    Dense(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
enum Group {
    Sparse(Vec<u64>),
    Dense { start: u64, subs: Vec<SubBlock> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
struct SelectSamples {
    total: usize,
    groups: Vec<Group>,
}

/// Selects the `r`-th (0-based) set bit of `w`.
#[inline]
pub fn select_in_word(mut w: u64, mut r: u32) -> u32 {
    let table = byte_select_table();
    let mut base = 0;
    loop {
        let byte = (w & 0xff) as usize;
        let c = byte.count_ones();
        if r < c {
            return base + table[byte * 8 + r as usize] as u32;
        }
        r -= c;
        w >>= 8;
        base += 8;
    }
}

fn byte_select_table() -> &'static [u8; 2048] {
    static TABLE: OnceLock<[u8; 2048]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [0u8; 2048];
        for byte in 0..256usize {
            let mut r = 0;
            for bit in 0..8 {
                if (byte >> bit) & 1 == 1 {
                    t[byte * 8 + r] = bit as u8;
                    r += 1;
                }
            }
        }
        t
    })
}

/// A bitvector with superblock/block rank directories and sampled select.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankSelect {
    bits: BitVector,
    superblocks: Vec<u64>,
    blocks: Vec<u16>,
    select: [SelectSamples; 2],
    sample_rate: usize,
    sub_rate: usize,
}

impl RankSelect {
    pub fn new(bits: BitVector) -> Self {
        Self::with_sampling(bits, SAMPLE_RATE, SUB_RATE)
    }

    /// Builds with custom select sampling. A group of `sample_rate` occurrences
    /// is stored explicitly when it spans more than `sample_rate²` bits; a
    /// sub-block of `sub_rate` occurrences when it spans more than `64·sub_rate`.
    #[doc(hidden)]
    pub fn with_sampling(bits: BitVector, sample_rate: usize, sub_rate: usize) -> Self {
        assert!(sub_rate > 0 && sample_rate.is_multiple_of(sub_rate));
        let nb = bits.len.div_ceil(BLOCK_BITS).max(1);
        let mut superblocks = Vec::with_capacity(nb.div_ceil(BLOCKS_PER_SUPERBLOCK));
        let mut blocks = Vec::with_capacity(nb);
        let mut total = 0u64;
        let mut in_sb = 0u64;
        for b in 0..nb {
            if b % BLOCKS_PER_SUPERBLOCK == 0 {
                superblocks.push(total);
                in_sb = 0;
            }
            blocks.push(in_sb as u16);
            let lo = b * (BLOCK_BITS / 64);
            let hi = (lo + BLOCK_BITS / 64).min(bits.words.len());
            let c: u64 = bits.words[lo.min(hi)..hi].iter().map(|w| w.count_ones() as u64).sum();
            total += c;
            in_sb += c;
        }
        let mut rs = RankSelect { bits, superblocks, blocks, select: Default::default(), sample_rate, sub_rate };
        rs.select = [rs.build_select(false), rs.build_select(true)];
        rs
    }

    fn build_select(&self, b: bool) -> SelectSamples {
        let total = self.count(b);
        // positions of occurrences 0, 64, 128, ... found by popcount skipping
        let sub = self.sub_rate;
        let mut samples = Vec::with_capacity(total / sub + 1);
        let mut seen = 0usize;
        for idx in 0..self.bits.words.len() {
            let w = self.bits.word_for(b, idx);
            let c = w.count_ones() as usize;
            let mut next = samples.len() * sub;
            while next < seen + c {
                samples.push(idx * 64 + select_in_word(w, (next - seen) as u32) as usize);
                next += sub;
            }
            seen += c;
        }
        let end = self.bits.len;
        let (rate, sub) = (self.sample_rate, self.sub_rate);
        let per_group = rate / sub;
        let mut groups = Vec::with_capacity(total.div_ceil(rate));
        for g in 0..total.div_ceil(rate) {
            let first = samples[g * per_group];
            let limit = samples.get((g + 1) * per_group).copied().unwrap_or(end);
            if limit - first > rate * rate {
                groups.push(Group::Sparse(self.collect_positions(b, first, limit)));
                continue;
            }
            let mut subs = Vec::with_capacity(per_group);
            let mut k = g * per_group;
            while k < ((g + 1) * per_group).min(samples.len()) {
                let s = samples[k];
                let sl = samples.get(k + 1).copied().unwrap_or(end);
                if sl - s > 64 * sub {
                    let rel = self.collect_positions(b, s, sl).into_iter().map(|p| (p as usize - first) as u32).collect();
                    subs.push(SubBlock::Sparse(rel));
                } else {
                    subs.push(SubBlock::Dense((s - first) as u32));
                }
                k += 1;
            }
            groups.push(Group::Dense { start: first as u64, subs });
        }
        SelectSamples { total, groups }
    }

    /// 0-based positions of `b` in `[lo, hi)`.
    fn collect_positions(&self, b: bool, lo: usize, hi: usize) -> Vec<u64> {
        let mut out = Vec::new();
        if lo >= hi {
            return out;
        }
        for idx in lo / 64..hi.div_ceil(64) {
            let mut w = self.bits.word_for(b, idx);
            if idx == lo / 64 {
                w &= !low_mask((lo % 64) as u32);
            }
            if idx == hi / 64 {
                w &= low_mask((hi % 64) as u32);
            }
            while w != 0 {
                out.push((idx * 64) as u64 + w.trailing_zeros() as u64);
                w &= w - 1;
            }
        }
        out
    }

    pub fn bits(&self) -> &BitVector {
        &self.bits
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.bits.get(i)
    }

    pub fn count_ones(&self) -> usize {
        self.rank1(self.bits.len)
    }

    pub fn count(&self, b: bool) -> usize {
        if b {
            self.count_ones()
        } else {
            self.bits.len - self.count_ones()
        }
    }

    /// Number of ones among the first `i` bits.
    #[inline]
    pub fn rank1(&self, i: usize) -> usize {
        assert!(i <= self.bits.len, "rank position {i} beyond length {}", self.bits.len);
        let blk = i / BLOCK_BITS;
        if blk >= self.blocks.len() {
            // i == len on a block boundary
            let last = self.blocks.len() - 1;
            return self.block_rank1(last) + self.scan_ones(last * BLOCK_BITS, i);
        }
        self.block_rank1(blk) + self.scan_ones(blk * BLOCK_BITS, i)
    }

    #[inline]
    fn block_rank1(&self, blk: usize) -> usize {
        self.superblocks[blk / BLOCKS_PER_SUPERBLOCK] as usize + self.blocks[blk] as usize
    }

    #[inline]
    fn scan_ones(&self, from: usize, to: usize) -> usize {
        let mut c = 0;
        let mut w = from / 64;
        while (w + 1) * 64 <= to {
            c += self.bits.words[w].count_ones() as usize;
            w += 1;
        }
        if !to.is_multiple_of(64) && w * 64 < to {
            c += (self.bits.words[w] & low_mask((to % 64) as u32)).count_ones() as usize;
        }
        c
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

    /// 1-based position of the `k`-th occurrence of `b`, or `None` when there are fewer.
    pub fn select(&self, b: bool, k: usize) -> Option<usize> {
        let ss = &self.select[b as usize];
        if k == 0 || k > ss.total {
            return None;
        }
        let k0 = k - 1;
        let (rate, sub) = (self.sample_rate, self.sub_rate);
        let pos = match &ss.groups[k0 / rate] {
            Group::Sparse(p) => p[k0 % rate] as usize,
            Group::Dense { start, subs } => {
                let r = k0 % rate;
                match &subs[r / sub] {
                    SubBlock::Sparse(p) => *start as usize + p[r % sub] as usize,
                    SubBlock::Dense(rel) => self.select_from(b, *start as usize + *rel as usize, k0),
                }
            }
        };
        Some(pos + 1)
    }

    /// 0-based position of occurrence `k0` (0-based), known to lie at or after `from`.
    fn select_from(&self, b: bool, from: usize, k0: usize) -> usize {
        let rank_b = |blk: usize| {
            let r1 = self.block_rank1(blk);
            if b {
                r1
            } else {
                blk * BLOCK_BITS - r1
            }
        };
        let mut blk = from / BLOCK_BITS;
        while blk + 1 < self.blocks.len() && rank_b(blk + 1) <= k0 {
            blk += 1;
        }
        let mut seen = rank_b(blk);
        let mut idx = blk * (BLOCK_BITS / 64);
        loop {
            let w = self.bits.word_for(b, idx);
            let c = w.count_ones() as usize;
            if seen + c > k0 {
                return idx * 64 + select_in_word(w, (k0 - seen) as u32) as usize;
            }
            seen += c;
            idx += 1;
        }
    }

    #[inline]
    pub fn select1(&self, k: usize) -> Option<usize> {
        self.select(true, k)
    }

    #[inline]
    pub fn select0(&self, k: usize) -> Option<usize> {
        self.select(false, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pack_roundtrip_and_bounds() {
        let l = PackedList::pack(&[12, 7, 11], 4).unwrap();
        assert_eq!(l.get(0), 12);
        assert_eq!(l.get(2), 11);
        assert!(PackedList::pack(&[], 4).unwrap().is_empty());
        assert_eq!(PackedList::pack(&[3, 16], 4), Err(Error::ValueOutOfRange { index: 1, value: 16, width: 4 }));
        assert!(PackedList::new(64).is_err());
        assert!(PackedList::new(0).is_err());
    }

    #[test]
    fn append_identity_and_concat() {
        let mut e = PackedList::new(4).unwrap();
        let l = PackedList::pack(&[1, 2, 3], 4).unwrap();
        e.append(&l).unwrap();
        assert_eq!(e, l);
        let mut a = PackedList::pack(&[1, 2], 4).unwrap();
        a.append(&PackedList::pack(&[3], 4).unwrap()).unwrap();
        assert_eq!(a.unpack(), vec![1, 2, 3]);
        assert!(a.append(&PackedList::new(5).unwrap()).is_err());
    }

    #[test]
    fn partition_small() {
        let l = PackedList::pack(&[12, 7, 11], 4).unwrap();
        let (l0, l1, b) = l.partition_by_bit(0).unwrap();
        assert_eq!(l0.unpack(), vec![7]);
        assert_eq!(l1.unpack(), vec![12, 11]);
        assert_eq!(b.to_string(), "101");
        assert!(l.partition_by_bit(4).is_err());
    }

    #[test]
    fn tables_match_per_bit_computation() {
        for width in 1..=8u32 {
            let g = entries_per_chunk(width);
            for t in 0..width {
                let table = partition_table(width, t).unwrap();
                for (chunk, &e) in table.iter().enumerate() {
                    let vals: Vec<u64> = (0..g).map(|k| (chunk as u64 >> (k as u32 * width)) & low_mask(width)).collect();
                    let shift = width - 1 - t;
                    let zs: Vec<u64> = vals.iter().copied().filter(|v| (v >> shift) & 1 == 0).collect();
                    let os: Vec<u64> = vals.iter().copied().filter(|v| (v >> shift) & 1 == 1).collect();
                    let pack = |xs: &[u64]| xs.iter().enumerate().fold(0u64, |a, (k, v)| a | v << (k as u32 * width));
                    assert_eq!(e & 0xffff, pack(&zs));
                    assert_eq!((e >> 16) & 0xffff, pack(&os));
                    assert_eq!((e >> 48) & 0xff, zs.len() as u64);
                    let bits = vals.iter().enumerate().fold(0u64, |a, (k, v)| a | ((v >> shift) & 1) << k);
                    assert_eq!((e >> 32) & 0xffff, bits);
                }
            }
        }
    }

    #[test]
    fn select_in_word_matches_scan() {
        for w in [1u64, 0x8000_0000_0000_0000, 0xdead_beef_0123_4567, !0] {
            let ones: Vec<u32> = (0..64).filter(|b| (w >> b) & 1 == 1).collect();
            for (r, &p) in ones.iter().enumerate() {
                assert_eq!(select_in_word(w, r as u32), p);
            }
        }
    }

    #[test]
    fn rank_select_small() {
        let rs = RankSelect::new(BitVector::new());
        assert_eq!(rs.rank1(0), 0);
        assert_eq!(rs.select1(1), None);
        let rs = RankSelect::new(BitVector::from_str_bits("0101"));
        assert_eq!(rs.select1(2), Some(4));
        assert_eq!(rs.select0(2), Some(3));
        assert_eq!(rs.select0(3), None);
        let rs = RankSelect::new(BitVector::from_bits(std::iter::repeat_n(true, 100)));
        for k in 0..=100 {
            assert_eq!(rs.rank1(k), k);
        }
        for k in 1..=100 {
            assert_eq!(rs.select1(k), Some(k));
        }
        assert_eq!(rs.select0(1), None);
    }
}
