//! Suffix array and LCP toolbox over `w$`: substring lcp and comparison,
//! trimmed comparison, comparison against infinite powers, periodic
//! progressions, string intervals and occurrence reporting.
//!
//! Positions are 1-based. Position `n + 1` addresses the sentinel `$`, which
//! sorts below every character.

mod progression;
mod suffix;

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

pub use progression::{PeriodicProgression, StringInterval};

use crate::error::{Error, Result};
use crate::rmq::{Extremum, Rmq};

pub const DEFAULT_OCCURRENCE_RATIO: usize = 4;

/// `w[start..=end]` of `w$`, followed by an extra `$` when `sentinel` is set;
/// `(0, 0)` is the empty string. A handle with `end = start - 1` and the flag
/// set is a lone `$` that does not sit at position `n + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubstringHandle {
    pub start: usize,
    pub end: usize,
    #[serde(default)]
    pub sentinel: bool,
}

impl SubstringHandle {
    pub const EMPTY: SubstringHandle = SubstringHandle { start: 0, end: 0, sentinel: false };

    pub fn new(start: usize, end: usize) -> Self {
        SubstringHandle { start, end, sentinel: false }
    }

    /// Length of the part stored in `w$`.
    pub fn body_len(&self) -> usize {
        if self.start == 0 {
            0
        } else {
            self.end + 1 - self.start
        }
    }

    pub fn len(&self) -> usize {
        self.body_len() + self.sentinel as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Drops the first `k` characters.
    pub fn skip(&self, k: usize) -> SubstringHandle {
        if k >= self.len() {
            Self::EMPTY
        } else {
            SubstringHandle { start: self.start + k, ..*self }
        }
    }

    /// Keeps at most the first `k` characters.
    pub fn prefix(&self, k: usize) -> SubstringHandle {
        if k == 0 || self.is_empty() {
            Self::EMPTY
        } else if k <= self.body_len() {
            SubstringHandle::new(self.start, self.start + k - 1)
        } else {
            *self
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TextIndex {
    n: usize,
    sigma: u64,
    /// `w$` with characters shifted up by one and `$ = 0`.
    text: Vec<u32>,
    sa: Vec<u32>,
    isa: Vec<u32>,
    /// `lcp[r]` = lcp of the suffixes at sorted ranks `r - 1` and `r` (`lcp[0] = 0`).
    lcp: Vec<u32>,
    rmq: Rmq,
    occ_ratio: usize,
}

impl TextIndex {
    /// Indexes `w` over the alphabet `[0, max(w) + 1)`.
    pub fn build(w: &[u64]) -> Result<Self> {
        let sigma = w.iter().max().map_or(1, |&m| m + 1);
        Self::with_alphabet(w, sigma)
    }

    pub fn with_alphabet(w: &[u64], sigma: u64) -> Result<Self> {
        if let Some(index) = w.iter().position(|&c| c >= sigma) {
            return Err(Error::SymbolOutOfRange { index, symbol: w[index], sigma });
        }
        if sigma >= u32::MAX as u64 || w.len() >= u32::MAX as usize {
            return Err(Error::Invariant("text or alphabet too large".into()));
        }
        let mut text: Vec<u32> = w.iter().map(|&c| c as u32 + 1).collect();
        text.push(0);
        let sa = suffix::suffix_array(&text, sigma as usize + 1);
        let mut isa = vec![0u32; sa.len()];
        for (r, &p) in sa.iter().enumerate() {
            isa[p as usize] = r as u32;
        }
        let lcp = suffix::kasai(&text, &sa, &isa);
        let rmq = Rmq::new(&lcp[..], Extremum::Min);
        Ok(TextIndex { n: w.len(), sigma, text, sa, isa, lcp, rmq, occ_ratio: DEFAULT_OCCURRENCE_RATIO })
    }

    /// Length of `w` (without the sentinel).
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn sigma(&self) -> u64 {
        self.sigma
    }

    /// [`occurrences`](Self::occurrences) accepts `|x| < ratio * (|y| + 1)`.
    pub fn occurrence_ratio(&self) -> usize {
        self.occ_ratio
    }

    pub fn set_occurrence_ratio(&mut self, ratio: usize) {
        self.occ_ratio = ratio.max(1);
    }

    /// Character at `pos` in `1..=n`, `None` for the sentinel at `n + 1`.
    pub fn char_at(&self, pos: usize) -> Option<u64> {
        match self.text[pos - 1] {
            0 => None,
            c => Some(c as u64 - 1),
        }
    }

    /// Internal code of `pos` in `w$` (`$ = 0`, character `c` is `c + 1`).
    #[inline]
    pub(crate) fn code(&self, pos: usize) -> u32 {
        self.text[pos - 1]
    }

    /// Start of the `r`-th smallest suffix of `w$` (`r` in `1..=n+1`).
    pub fn sa(&self, r: usize) -> usize {
        self.sa[r - 1] as usize + 1
    }

    /// Rank (1-based) of the suffix starting at `pos`.
    pub fn isa(&self, pos: usize) -> usize {
        self.isa[pos - 1] as usize + 1
    }

    /// Suffix array of `w$` as 1-based starts.
    pub fn suffix_array(&self) -> Vec<usize> {
        self.sa.iter().map(|&p| p as usize + 1).collect()
    }

    /// Lcp of consecutive sorted suffixes; entry 0 is 0.
    pub fn lcp_table(&self) -> &[u32] {
        &self.lcp
    }

    /// Lcp of the suffixes of `w$` starting at `a` and `b`.
    pub fn suffix_lcp(&self, a: usize, b: usize) -> usize {
        if a == b {
            return self.n + 2 - a;
        }
        let (ra, rb) = (self.isa[a - 1] as usize, self.isa[b - 1] as usize);
        let (lo, hi) = if ra < rb { (ra + 1, rb + 1) } else { (rb + 1, ra + 1) };
        self.lcp[self.rmq.query(&self.lcp[..], lo, hi)] as usize
    }

    pub fn substring(&self, start: usize, end: usize) -> Result<SubstringHandle> {
        if start == 0 && end == 0 {
            return Ok(SubstringHandle::EMPTY);
        }
        if start == 0 || start > end || end > self.n + 1 {
            return Err(Error::InvalidSubstring { start, end, len: self.n });
        }
        Ok(SubstringHandle::new(start, end))
    }

    /// `w[start..=end]$`, for `1 <= start <= end + 1` and `end <= n`.
    pub fn capped(&self, start: usize, end: usize) -> Result<SubstringHandle> {
        if start == 0 || start > end + 1 || end > self.n {
            return Err(Error::InvalidSubstring { start, end, len: self.n });
        }
        Ok(self.capped_unchecked(start, end))
    }

    pub(crate) fn capped_unchecked(&self, start: usize, end: usize) -> SubstringHandle {
        if end == self.n {
            self.suffix(start)
        } else {
            SubstringHandle { start, end, sentinel: true }
        }
    }

    /// The suffix `w[start..]$`.
    pub fn suffix(&self, start: usize) -> SubstringHandle {
        SubstringHandle::new(start, self.n + 1)
    }

    /// Internal code of the `t`-th character (0-based) of `x`.
    #[inline]
    fn code_at(&self, x: SubstringHandle, t: usize) -> Option<u32> {
        let b = x.body_len();
        if t < b {
            Some(self.text[x.start - 1 + t])
        } else if t == b && x.sentinel {
            Some(0)
        } else {
            None
        }
    }

    /// Whether `x` contains a `$`, which is then its last character.
    pub(crate) fn has_sentinel(&self, x: SubstringHandle) -> bool {
        x.sentinel || (x.body_len() > 0 && x.end == self.n + 1)
    }

    /// Characters of a handle as internal codes, for tests and display.
    pub fn codes(&self, x: SubstringHandle) -> Vec<u32> {
        (0..x.len()).map(|t| self.code_at(x, t).unwrap()).collect()
    }

    pub fn lcp(&self, x: SubstringHandle, y: SubstringHandle) -> usize {
        if x.is_empty() || y.is_empty() {
            return 0;
        }
        let (bx, by) = (x.body_len(), y.body_len());
        let mut l = if bx == 0 || by == 0 { 0 } else { self.suffix_lcp(x.start, y.start).min(bx).min(by) };
        // past a body only `$` can still match, and it ends both strings
        if l == bx.min(by) && self.code_at(x, l).is_some() && self.code_at(x, l) == self.code_at(y, l) {
            l += 1;
        }
        l
    }

    fn order_after(&self, x: SubstringHandle, y: SubstringHandle, l: usize) -> Ordering {
        self.code_at(x, l).cmp(&self.code_at(y, l))
    }

    pub fn compare(&self, x: SubstringHandle, y: SubstringHandle) -> Ordering {
        self.order_after(x, y, self.lcp(x, y))
    }

    /// Compares `x` and `y` each cut to `l` characters.
    pub fn compare_trimmed(&self, x: SubstringHandle, y: SubstringHandle, l: usize) -> Ordering {
        let p = self.lcp(x, y);
        if p >= l {
            Ordering::Equal
        } else {
            self.order_after(x, y, p)
        }
    }

    /// `lcp(x, y^∞)` and whether `x` sorts below or above `y^∞` (never equal).
    pub fn lcp_with_power(&self, x: SubstringHandle, y: SubstringHandle) -> Result<(usize, Ordering)> {
        if y.is_empty() {
            return Err(Error::EmptyPattern);
        }
        let l = self.lcp(x, y);
        if l < y.len() {
            return Ok((l, self.order_after(x, y, l)));
        }
        // x = y x'; x' against x behaves like x' against y^∞
        let rest = x.skip(y.len());
        let l2 = self.lcp(rest, x);
        Ok((y.len() + l2, self.order_after(rest, x, l2)))
    }
}
