//! Per-edge and per-node queries for suffixes of a query substring `x`.

use serde::{Deserialize, Serialize};

use super::{Segment, Side, WaveletSuffixTree};
use crate::error::{Error, Result};
use crate::stringology::{PeriodicProgression, SubstringHandle, TextIndex};

/// `L_x(e)`: suffixes of `x` assigned to the edge into `edge`, as start
/// positions. Elements are prefixes of one another, so ascending length is
/// ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSuffixList {
    pub edge: usize,
    pub x: SubstringHandle,
    /// Non-overlapping progressions by decreasing start.
    progs: Vec<PeriodicProgression>,
}

impl EdgeSuffixList {
    pub fn progressions(&self) -> &[PeriodicProgression] {
        &self.progs
    }

    pub fn len(&self) -> usize {
        self.progs.iter().map(|p| p.count).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.progs.is_empty()
    }

    /// Start of the `idx`-th smallest (0-based) element.
    pub fn get(&self, mut idx: usize) -> Option<usize> {
        for p in &self.progs {
            if idx < p.count {
                return Some(p.term(p.count - 1 - idx));
            }
            idx -= p.count;
        }
        None
    }

    /// Starts in ascending order of the suffixes.
    pub fn starts(&self) -> impl Iterator<Item = usize> + '_ {
        self.progs.iter().flat_map(|p| (0..p.count).rev().map(move |i| p.term(i)))
    }

    /// The element starting at `k`, as a handle.
    pub fn suffix(&self, k: usize) -> SubstringHandle {
        SubstringHandle::new(k, self.x.end)
    }
}

fn push_nonempty(out: &mut Vec<PeriodicProgression>, p: PeriodicProgression) {
    if !p.is_empty() {
        out.push(p);
    }
}

fn settle(plus: usize, minus: usize) -> Result<usize> {
    plus.checked_sub(minus).ok_or_else(|| Error::Invariant(format!("side count {plus} - {minus} is negative")))
}

impl WaveletSuffixTree {
    /// Starts `k >= max(i, j - ℓ(u) + 2)` of suffixes `w[k..j]` of `x` lying in
    /// `I(e)`, `e` being the edge from `u` into `c`.
    fn short_in(&self, ti: &TextIndex, x: SubstringHandle, c: usize) -> Result<Vec<PeriodicProgression>> {
        let u = self.parent(c).unwrap();
        let lu = self.nodes[u].level;
        let lo = x.start.max((x.end + 2).saturating_sub(lu));
        let mut out = Vec::new();
        if lo > x.end {
            return Ok(out);
        }
        let iv = self.edge_interval(ti, c);
        let p = self.common_prefix(ti, u);
        if p.is_empty() {
            for k in lo..=x.end {
                if iv.contains(ti, SubstringHandle::new(k, x.end)) {
                    out.push(PeriodicProgression::single(k));
                }
            }
            return Ok(out);
        }
        // every string of I(u) starts with p
        for occ in ti.occurrences(SubstringHandle::new(lo, x.end), p)? {
            push_nonempty(&mut out, ti.filter_progression(occ, x.end, &iv)?);
        }
        Ok(out)
    }

    /// Starts `k` in `[a, b]` whose suffix `v[k..]$` lies in `I(e)`, i.e. below `c`.
    fn range_in(&self, ti: &TextIndex, a: usize, b: usize, c: usize) -> Result<Vec<PeriodicProgression>> {
        let mut out = Vec::new();
        if a > b {
            return Ok(out);
        }
        let iv = self.edge_interval(ti, c);
        let vend = self.off + self.len;
        // every suffix below c starts with the common prefix of I(c)
        let p = self.common_prefix(ti, c);
        if p.is_empty() {
            for k in a..=b {
                if iv.contains(ti, self.suffix_handle(ti, k)) {
                    out.push(PeriodicProgression::single(k));
                }
            }
            return Ok(out);
        }
        let end = b + p.len() - 1;
        let window = if end <= vend { SubstringHandle::new(a, end) } else { ti.capped_unchecked(a, vend) };
        for occ in ti.occurrences(window, p)? {
            push_nonempty(&mut out, ti.filter_progression_capped(occ, vend, &iv)?);
        }
        Ok(out)
    }

    /// `L_x(e)` for the edge into `c`: suffixes of `x` in `I(e)` but not in `I(c)`.
    pub fn edge_suffix_list(&self, ti: &TextIndex, x: SubstringHandle, c: usize) -> Result<EdgeSuffixList> {
        self.check_query(ti, x)?;
        let u = self.parent(c).ok_or_else(|| Error::Invariant("the root has no incoming edge".into()))?;
        let (lu, lc) = (self.nodes[u].level, self.nodes[c].level);
        let below = self.below_interval(ti, c);
        let mut progs = Vec::with_capacity(3);
        for p in self.short_in(ti, x, c)? {
            push_nonempty(&mut progs, ti.filter_progression(p, x.end, &below)?);
        }
        // suffixes with ℓ(u) <= |s| < ℓ(c) agree with their full suffix up to ℓ(u)
        if x.end + 1 >= lu {
            let a = x.start.max((x.end + 2).saturating_sub(lc));
            let b = x.end + 1 - lu;
            for p in self.range_in(ti, a, b, c)? {
                push_nonempty(&mut progs, ti.filter_progression(p, x.end, &below)?);
            }
        }
        progs.sort_unstable_by_key(|p| std::cmp::Reverse(p.start));
        Ok(EdgeSuffixList { edge: c, x, progs })
    }

    fn check_segment(&self, u: usize, seg: Segment, by_char: bool) -> Result<()> {
        let len = if by_char { self.bitmask_char(u).len() } else { self.bitmask_pos(u).len() };
        if seg.0 > seg.1 || seg.1 > len {
            return Err(Error::InvalidRange { i: seg.0, j: seg.1, len });
        }
        Ok(())
    }

    /// Progressions of the suffixes of `x` that lie in `I(u, side)` and are
    /// shorter than `ℓ(u)` (added) or whose full suffix lies below the child
    /// while `x`'s suffix is shorter than `ℓ(u)` (subtracted).
    fn side_corrections(
        &self,
        ti: &TextIndex,
        x: SubstringHandle,
        u: usize,
        side: Side,
    ) -> Result<(usize, Vec<PeriodicProgression>, Vec<PeriodicProgression>)> {
        let c = self.child(u, side).ok_or_else(|| Error::Invariant(format!("node {u} is a leaf")))?;
        let lu = self.nodes[u].level;
        let add = self.short_in(ti, x, c)?;
        let sub = self.range_in(ti, x.start.max((x.end + 2).saturating_sub(lu)), x.end, c)?;
        Ok((c, add, sub))
    }

    /// Number of suffixes of `x` in `I(u, side)`; `seg` is the first-bitmask
    /// segment of `u` for starts in `x`.
    pub fn count_side(&self, ti: &TextIndex, x: SubstringHandle, u: usize, side: Side, seg: Segment) -> Result<usize> {
        self.check_query(ti, x)?;
        self.check_segment(u, seg, false)?;
        let (_, add, sub) = self.side_corrections(ti, x, u, side)?;
        let s = self.bitmask_pos(u);
        let pop = s.rank(side.bit(), seg.1) - s.rank(side.bit(), seg.0);
        let count = |v: &[PeriodicProgression]| v.iter().map(|p| p.count).sum::<usize>();
        settle(pop + count(&add), count(&sub))
    }

    /// Number of suffixes of `x` in `I(u, side)` preceded by the character
    /// with internal code `code` (`0` is `$`); `seg` is the second-bitmask
    /// segment of `u` for starts in `x` preceded by `code`.
    pub fn count_side_char(&self, ti: &TextIndex, x: SubstringHandle, u: usize, side: Side, code: u32, seg: Segment) -> Result<usize> {
        self.check_query(ti, x)?;
        self.check_segment(u, seg, true)?;
        let (_, add, sub) = self.side_corrections(ti, x, u, side)?;
        let s = self.bitmask_char(u);
        let pop = s.rank(side.bit(), seg.1) - s.rank(side.bit(), seg.0);
        let count = |v: &[PeriodicProgression]| v.iter().map(|p| self.count_preceded(ti, p, code)).sum::<usize>();
        settle(pop + count(&add), count(&sub))
    }

    /// Terms of `p` preceded by `code`; all terms after the first share one
    /// preceding character.
    fn count_preceded(&self, ti: &TextIndex, p: &PeriodicProgression, code: u32) -> usize {
        let first = (self.preceding(ti, p.start) == code) as usize;
        if p.count > 1 && self.preceding(ti, p.term(1)) == code {
            first + p.count - 1
        } else {
            first
        }
    }

    /// Run-length encoding of the codes preceding the elements of `L_x(e)`, in list order.
    pub fn edge_preceding_rle(&self, ti: &TextIndex, x: SubstringHandle, c: usize) -> Result<Vec<(u32, usize)>> {
        let list = self.edge_suffix_list(ti, x, c)?;
        let mut runs: Vec<(u32, usize)> = Vec::new();
        let mut push = |code: u32, k: usize| match runs.last_mut() {
            Some(r) if r.0 == code => r.1 += k,
            _ => runs.push((code, k)),
        };
        for p in list.progressions() {
            if p.count > 1 {
                push(self.preceding(ti, p.term(1)), p.count - 1);
            }
            push(self.preceding(ti, p.start), 1);
        }
        Ok(runs)
    }

    /// Membership of `z` in `I(u)`.
    pub fn in_node_interval(&self, ti: &TextIndex, u: usize, z: SubstringHandle) -> bool {
        self.node_interval(ti, u).contains(ti, z)
    }
}
