use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{SubstringHandle, TextIndex};
use crate::error::{Error, Result};

/// Positions `start, start + diff, ..., start + (count - 1) * diff` such that
/// the blocks between consecutive terms are equal strings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PeriodicProgression {
    pub start: usize,
    pub diff: usize,
    pub count: usize,
}

impl PeriodicProgression {
    pub const EMPTY: PeriodicProgression = PeriodicProgression { start: 0, diff: 1, count: 0 };

    pub fn single(p: usize) -> Self {
        PeriodicProgression { start: p, diff: 1, count: 1 }
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn term(&self, i: usize) -> usize {
        self.start + i * self.diff
    }

    pub fn last(&self) -> Option<usize> {
        (self.count > 0).then(|| self.term(self.count - 1))
    }

    pub fn terms(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.count).map(|i| self.term(i))
    }

    /// Sub-progression of terms `lo..=hi`.
    fn slice(&self, lo: usize, hi: usize) -> Self {
        PeriodicProgression { start: self.term(lo), diff: self.diff, count: hi + 1 - lo }
    }

    /// Checks the defining equalities with lcp queries.
    pub fn is_periodic(&self, text: &TextIndex) -> bool {
        self.count <= 2 || text.suffix_lcp(self.start, self.term(1)) >= (self.count - 2) * self.diff
    }
}

/// `{z : low <=_trim z <=_trim high}` with either end optionally open.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StringInterval {
    pub low: SubstringHandle,
    pub high: SubstringHandle,
    pub trim: usize,
    pub low_open: bool,
    pub high_open: bool,
}

impl StringInterval {
    pub fn closed(low: SubstringHandle, high: SubstringHandle, trim: usize) -> Self {
        StringInterval { low, high, trim, low_open: false, high_open: false }
    }

    fn admits_low(&self, o: Ordering) -> bool {
        o == Ordering::Greater || (o == Ordering::Equal && !self.low_open)
    }

    fn admits_high(&self, o: Ordering) -> bool {
        o == Ordering::Less || (o == Ordering::Equal && !self.high_open)
    }

    pub fn contains(&self, text: &TextIndex, z: SubstringHandle) -> bool {
        self.admits_low(text.compare_trimmed(z, self.low, self.trim)) && self.admits_high(text.compare_trimmed(z, self.high, self.trim))
    }
}

/// Inclusive index range `lo..=hi` of progression terms sharing one order against an endpoint.
type Band = (usize, usize, Ordering);

impl TextIndex {
    /// Orders `x_i = w[p_i..j]` (with `$` appended when `capped`) against `s` trimmed to `l`, for all `i` at once.
    /// `r0 = lcp(x_0, rho^∞)` and `below` tells whether `x_0` sorts below `rho^∞`.
    fn classify(
        &self,
        p: &PeriodicProgression,
        (j, capped): (usize, bool),
        (r0, below): (usize, bool),
        s: SubstringHandle,
        l: usize,
    ) -> Result<Vec<Band>> {
        let (d, k) = (p.diff, p.count - 1);
        let rho = SubstringHandle::new(p.start, p.start + d - 1);
        let (rs, s_order) = self.lcp_with_power(s, rho)?;
        // order of x_i against s when their lcp is r_i
        let by_x = if below { Ordering::Less } else { Ordering::Greater };
        let mut out = Vec::with_capacity(3);
        let mut push = |lo: usize, hi: usize, o: Ordering| {
            if lo <= hi && lo <= k {
                out.push((lo, hi.min(k), o));
            }
        };
        if rs >= l {
            // r_i >= l exactly for i <= (r0 - l) / d
            let eq = if r0 >= l { Some((r0 - l) / d) } else { None };
            match eq {
                Some(e) => {
                    push(0, e, Ordering::Equal);
                    push(e + 1, k, by_x);
                }
                None => push(0, k, by_x),
            }
        } else {
            // r_i > rs for i < (r0 - rs) / d; lcp(x_i, s) = rs and rho^∞ decides
            let greater = if r0 > rs { (r0 - rs - 1) / d + 1 } else { 0 };
            let by_rho = if s_order == Ordering::Greater { Ordering::Less } else { Ordering::Greater };
            if greater > 0 {
                push(0, greater - 1, by_rho);
            }
            let mut rest = greater;
            if r0 >= rs && (r0 - rs) % d == 0 && (r0 - rs) / d <= k {
                let i = (r0 - rs) / d;
                let xi = SubstringHandle { start: p.term(i), end: j, sentinel: capped };
                push(i, i, self.compare_trimmed(xi, s, l));
                rest = i + 1;
            }
            push(rest, k, by_x);
        }
        Ok(out)
    }

    /// Terms `p_i` of `p` with `w[p_i..j]` in `iv`, as one progression.
    pub fn filter_progression(&self, p: PeriodicProgression, j: usize, iv: &StringInterval) -> Result<PeriodicProgression> {
        self.filter_terms(p, (j, false), iv)
    }

    /// Like [`filter_progression`](Self::filter_progression) for the strings
    /// `w[p_i..j]$`, where `j <= n`.
    pub fn filter_progression_capped(&self, p: PeriodicProgression, j: usize, iv: &StringInterval) -> Result<PeriodicProgression> {
        if j == self.n {
            return self.filter_terms(p, (j + 1, false), iv);
        }
        self.filter_terms(p, (j, true), iv)
    }

    fn filter_terms(&self, p: PeriodicProgression, tail: (usize, bool), iv: &StringInterval) -> Result<PeriodicProgression> {
        if p.is_empty() {
            return Ok(p);
        }
        let (j, capped) = tail;
        let last = p.last().unwrap();
        if last > j || j > self.n + 1 - capped as usize || p.start == 0 || p.diff == 0 {
            return Err(Error::InvalidSubstring { start: last, end: j, len: self.n });
        }
        if iv.trim == 0 {
            return Err(Error::Invariant("string interval trim must be positive".into()));
        }
        let x0 = SubstringHandle { start: p.start, end: j, sentinel: capped };
        if p.count == 1 {
            return Ok(if iv.contains(self, x0) { p } else { PeriodicProgression::EMPTY });
        }
        let rho = SubstringHandle::new(p.start, p.start + p.diff - 1);
        let (r0, o0) = self.lcp_with_power(x0, rho)?;
        let power = (r0, o0 == Ordering::Less);
        let mut kept: Vec<(usize, usize)> = Vec::new();
        for (lo, hi, o) in self.classify(&p, tail, power, iv.low, iv.trim)? {
            if !iv.admits_low(o) {
                continue;
            }
            for (a, b, o2) in self.classify(&p, tail, power, iv.high, iv.trim)? {
                let (a, b) = (a.max(lo), b.min(hi));
                if a <= b && iv.admits_high(o2) {
                    kept.push((a, b));
                }
            }
        }
        if kept.is_empty() {
            return Ok(PeriodicProgression::EMPTY);
        }
        kept.sort_unstable();
        // (x_i) is monotone, so the kept indices are contiguous
        debug_assert!(kept.windows(2).all(|w| w[1].0 == w[0].1 + 1), "kept ranges {kept:?} not contiguous");
        Ok(p.slice(kept[0].0, kept.last().unwrap().1))
    }

    /// Rank range `[lo, hi)` (0-based) of suffixes of `w$` that start with `y`.
    fn sa_interval(&self, y: SubstringHandle) -> (usize, usize) {
        let m = y.len();
        let below = |r: usize, strict: bool| {
            let o = self.compare_trimmed(self.suffix(self.sa[r] as usize + 1), y, m);
            o == Ordering::Less || (!strict && o == Ordering::Equal)
        };
        let bound = |strict: bool| {
            let (mut lo, mut hi) = (0, self.sa.len());
            while lo < hi {
                let mid = (lo + hi) / 2;
                if below(mid, strict) {
                    lo = mid + 1;
                } else {
                    hi = mid;
                }
            }
            lo
        };
        (bound(true), bound(false))
    }

    /// All occurrences of `y` inside `x`, as non-overlapping periodic
    /// progressions in increasing order. Requires `|x| < ratio * (|y| + 1)`.
    pub fn occurrences(&self, x: SubstringHandle, y: SubstringHandle) -> Result<Vec<PeriodicProgression>> {
        if y.is_empty() {
            return Err(Error::EmptyPattern);
        }
        if x.len() >= self.occ_ratio * (y.len() + 1) {
            return Err(Error::RatioExceeded { text: x.len(), pattern: y.len(), ratio: self.occ_ratio });
        }
        if x.len() < y.len() {
            return Ok(Vec::new());
        }
        if self.has_sentinel(y) {
            // `y` ends in `$`, so it can only sit at the very end of `x`
            let k = x.len() - y.len();
            let hit = self.lcp(x.skip(k), y) >= y.len();
            return Ok(if hit { vec![PeriodicProgression::single(x.start + k)] } else { Vec::new() });
        }
        // `y` has no `$`, so occurrences lie inside the `$`-free part of `x`
        let body = x.body_len() - (x.body_len() > 0 && x.end == self.n + 1) as usize;
        if body < y.len() {
            return Ok(Vec::new());
        }
        let (first, last) = (x.start, x.start + body - y.len());
        let (lo, hi) = self.sa_interval(y);
        let positions: Vec<usize> = if hi - lo <= last + 1 - first {
            let mut v: Vec<usize> = self.sa[lo..hi].iter().map(|&p| p as usize + 1).filter(|p| (first..=last).contains(p)).collect();
            v.sort_unstable();
            v
        } else {
            (first..=last).filter(|&p| self.suffix_lcp(p, y.start) >= y.len()).collect()
        };
        Ok(group_occurrences(&positions, y.len()))
    }
}

/// Greedy grouping: a run keeps a fixed gap no larger than `m`, so consecutive
/// blocks are both prefixes of the pattern and hence equal.
fn group_occurrences(positions: &[usize], m: usize) -> Vec<PeriodicProgression> {
    let mut out: Vec<PeriodicProgression> = Vec::new();
    for &p in positions {
        if let Some(cur) = out.last_mut() {
            let gap = p - cur.last().unwrap();
            if gap <= m && (cur.count == 1 || gap == cur.diff) {
                cur.diff = gap;
                cur.count += 1;
                continue;
            }
        }
        out.push(PeriodicProgression::single(p));
    }
    out
}
