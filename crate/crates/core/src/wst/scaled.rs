//! Suffix trees over overlapping windows of geometrically shrinking length,
//! so that a query on `x` runs in a tree whose size depends on `|x|` only.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::query::BwtRuns;
use super::WaveletSuffixTree;
use crate::error::{Error, Result};
use crate::stringology::{SubstringHandle, TextIndex};

/// Scales with windows of at most this length keep no trees; their queries
/// sort the suffixes of `x` directly.
pub const NAIVE_SCALE_LIMIT: usize = 64;

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Scale {
    /// Window length `n_k = ⌊n^(2^-k)⌋`.
    len: usize,
    /// Windows start every `⌊n_k / 2⌋` positions; the last window is the suffix of `w`.
    starts: Vec<usize>,
    trees: Vec<WaveletSuffixTree>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScaledIndex {
    n: usize,
    scales: Vec<Scale>,
    /// `table[m]`: scale used for substrings of length `m`.
    table: Vec<u8>,
}

fn isqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

impl ScaledIndex {
    pub fn build(ti: &TextIndex) -> Result<Self> {
        let n = ti.len();
        let mut scales = vec![Scale { len: n, starts: vec![1], trees: vec![WaveletSuffixTree::build(ti)?] }];
        let mut len = isqrt(n);
        while len >= 2 {
            let mut scale = Scale { len, starts: Vec::new(), trees: Vec::new() };
            if len > NAIVE_SCALE_LIMIT {
                let step = len / 2;
                let mut s = 1;
                while s + len - 1 <= n {
                    scale.starts.push(s);
                    s += step;
                }
                if *scale.starts.last().unwrap() != n + 1 - len {
                    scale.starts.push(n + 1 - len);
                }
                for &s in &scale.starts {
                    scale.trees.push(WaveletSuffixTree::build_range(ti, s, s + len - 1)?);
                }
            }
            scales.push(scale);
            len = isqrt(len);
        }
        // the deepest scale whose windows still hold twice the query length
        let mut table = vec![0u8; n + 1];
        for (m, slot) in table.iter_mut().enumerate().skip(1) {
            *slot = scales.iter().rposition(|s| s.len >= 2 * m).unwrap_or(0) as u8;
        }
        Ok(ScaledIndex { n, scales, table })
    }

    /// Window lengths `n_0 = n, n_1, ...`.
    pub fn scale_lengths(&self) -> Vec<usize> {
        self.scales.iter().map(|s| s.len).collect()
    }

    /// Window length used for substrings of length `m` in `1..=n`.
    pub fn window_for_length(&self, m: usize) -> usize {
        self.scales[self.table[m] as usize].len
    }

    /// Number of windows and total bitmask bits of each scale.
    pub fn scale_sizes(&self) -> Vec<(usize, usize)> {
        self.scales.iter().map(|s| (s.trees.len(), s.trees.iter().map(|t| t.total_bits()).sum())).collect()
    }

    /// The tree answering queries on `x`, or `None` when `x` is sorted directly.
    fn tree_for(&self, ti: &TextIndex, x: SubstringHandle) -> Result<Option<&WaveletSuffixTree>> {
        if ti.len() != self.n {
            return Err(Error::Invariant(format!("index built for length {} used with length {}", self.n, ti.len())));
        }
        if x.is_empty() || x.sentinel || x.start > x.end || x.end > self.n {
            return Err(Error::InvalidSubstring { start: x.start, end: x.end, len: self.n });
        }
        let scale = &self.scales[self.table[x.len()] as usize];
        if scale.trees.is_empty() {
            return Ok(None);
        }
        let t = ((x.start - scale.starts[0]) / (scale.len / 2).max(1)).min(scale.starts.len() - 1);
        let covers = |t: usize| scale.starts[t] <= x.start && x.end < scale.starts[t] + scale.len;
        let t = if covers(t) { t } else { scale.starts.len() - 1 };
        if !covers(t) {
            return Err(Error::Invariant(format!("no window of length {} covers {x:?}", scale.len)));
        }
        Ok(Some(&scale.trees[t]))
    }

    fn sorted_suffixes(ti: &TextIndex, x: SubstringHandle) -> Vec<usize> {
        let mut v: Vec<usize> = (x.start..=x.end).collect();
        v.sort_by(|&a, &b| ti.compare(SubstringHandle::new(a, x.end), SubstringHandle::new(b, x.end)));
        v
    }

    pub fn substring_suffix_rank(&self, ti: &TextIndex, x: SubstringHandle, y: SubstringHandle) -> Result<usize> {
        match self.tree_for(ti, x)? {
            Some(t) => t.substring_suffix_rank(ti, x, y),
            None => Ok((x.start..=x.end).filter(|&k| ti.compare(SubstringHandle::new(k, x.end), y) == Ordering::Less).count()),
        }
    }

    pub fn substring_suffix_select(&self, ti: &TextIndex, x: SubstringHandle, k: usize) -> Result<SubstringHandle> {
        match self.tree_for(ti, x)? {
            Some(t) => t.substring_suffix_select(ti, x, k),
            None => {
                if k == 0 || k > x.len() {
                    return Err(Error::OrdinalOutOfRange { k, count: x.len() });
                }
                Ok(SubstringHandle::new(Self::sorted_suffixes(ti, x)[k - 1], x.end))
            }
        }
    }

    pub fn substring_bwt_rle(&self, ti: &TextIndex, x: SubstringHandle) -> Result<BwtRuns> {
        match self.tree_for(ti, x)? {
            Some(t) => t.substring_bwt_rle(ti, x),
            None => {
                let mut runs: BwtRuns = Vec::new();
                let before = |k: usize| if k == x.start { None } else { ti.char_at(k - 1) };
                for c in std::iter::once(ti.char_at(x.end)).chain(Self::sorted_suffixes(ti, x).into_iter().map(before)) {
                    match runs.last_mut() {
                        Some(r) if r.0 == c => r.1 += 1,
                        _ => runs.push((c, 1)),
                    }
                }
                Ok(runs)
            }
        }
    }

    /// Restores lookup dictionaries after deserialization.
    pub fn rebuild_lookup(&mut self) {
        for s in &mut self.scales {
            for t in &mut s.trees {
                t.rebuild_lookup();
            }
        }
    }
}
