//! Range minimum/maximum over a static sequence: blocks of 16 plus a sparse
//! table over block extrema.

use serde::{Deserialize, Serialize};

use crate::bitpack::PackedList;

const BLOCK: usize = 16;

/// Random access to the values an [`Rmq`] is built over.
pub trait Keyed {
    type K: Ord;
    fn key(&self, i: usize) -> Self::K;
    fn size(&self) -> usize;
}

impl<T: Ord + Copy> Keyed for [T] {
    type K = T;
    #[inline]
    fn key(&self, i: usize) -> T {
        self[i]
    }
    fn size(&self) -> usize {
        self.len()
    }
}

impl Keyed for PackedList {
    type K = u64;
    #[inline]
    fn key(&self, i: usize) -> u64 {
        self.get(i)
    }
    fn size(&self) -> usize {
        self.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Extremum {
    Min,
    Max,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Rmq {
    kind: Extremum,
    /// `table[k][b]`: index of the extremum of blocks `[b, b + 2^k)`.
    table: Vec<Vec<u32>>,
}

impl Rmq {
    pub fn new<S: Keyed + ?Sized>(values: &S, kind: Extremum) -> Self {
        let nb = values.size().div_ceil(BLOCK);
        let mut base = Vec::with_capacity(nb);
        for b in 0..nb {
            let lo = b * BLOCK;
            let hi = (lo + BLOCK).min(values.size());
            base.push(Self::scan(values, kind, lo, hi) as u32);
        }
        let mut table = vec![base];
        let mut k = 1;
        while (1 << k) <= nb {
            let prev = &table[k - 1];
            let half = 1 << (k - 1);
            let row = (0..=nb - (1 << k)).map(|b| Self::pick(values, kind, prev[b], prev[b + half])).collect();
            table.push(row);
            k += 1;
        }
        Rmq { kind, table }
    }

    #[inline]
    fn better<V: Ord>(kind: Extremum, a: &V, b: &V) -> bool {
        match kind {
            Extremum::Min => a < b,
            Extremum::Max => a > b,
        }
    }

    /// Leftmost extremum wins ties.
    #[inline]
    fn pick<S: Keyed + ?Sized>(values: &S, kind: Extremum, a: u32, b: u32) -> u32 {
        let (x, y) = if a <= b { (a, b) } else { (b, a) };
        if Self::better(kind, &values.key(y as usize), &values.key(x as usize)) {
            y
        } else {
            x
        }
    }

    #[inline]
    fn scan<S: Keyed + ?Sized>(values: &S, kind: Extremum, lo: usize, hi: usize) -> usize {
        let mut best = lo;
        let mut bv = values.key(lo);
        for i in lo + 1..hi {
            let v = values.key(i);
            if Self::better(kind, &v, &bv) {
                best = i;
                bv = v;
            }
        }
        best
    }

    /// Index of the extremum of `values[lo..hi]` (0-based, `lo < hi`). `values`
    /// must be the slice the structure was built from.
    pub fn query<S: Keyed + ?Sized>(&self, values: &S, lo: usize, hi: usize) -> usize {
        assert!(lo < hi && hi <= values.size(), "empty or out-of-range RMQ [{lo}, {hi})");
        let kind = self.kind;
        let (bl, bh) = (lo / BLOCK, (hi - 1) / BLOCK);
        if bl == bh {
            return Self::scan(values, kind, lo, hi);
        }
        let mut best = Self::scan(values, kind, lo, (bl + 1) * BLOCK) as u32;
        if bl + 1 < bh {
            let (a, b) = (bl + 1, bh);
            let k = (usize::BITS - 1 - (b - a).leading_zeros()) as usize;
            let inner = Self::pick(values, kind, self.table[k][a], self.table[k][b - (1 << k)]);
            best = Self::pick(values, kind, best, inner);
        }
        let tail = Self::scan(values, kind, bh * BLOCK, hi) as u32;
        Self::pick(values, kind, best, tail) as usize
    }
}
