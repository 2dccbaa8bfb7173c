use std::cmp::Ordering;

use super::{Segment, Side, WaveletSuffixTree};
use crate::error::{Error, Result};
use crate::stringology::{SubstringHandle, TextIndex};

/// Run-length encoded BWT; `None` stands for `$`.
pub type BwtRuns = Vec<(Option<u64>, usize)>;

/// Mutable state of one BWT traversal.
struct Walk<'a> {
    tree: &'a WaveletSuffixTree,
    ti: &'a TextIndex,
    x: SubstringHandle,
    runs: Vec<(u32, usize)>,
    /// (node, first-bitmask segment, second-bitmask segment for the current code)
    path: Vec<(usize, Segment, Segment)>,
    work: usize,
}

impl Walk<'_> {
    fn current(&self) -> u32 {
        self.runs.last().unwrap().0
    }

    fn emit(&mut self, code: u32, k: usize) {
        if k == 0 {
            return;
        }
        match self.runs.last_mut() {
            Some(r) if r.0 == code => r.1 += k,
            _ => {
                self.runs.push((code, k));
                self.refresh();
            }
        }
    }

    /// Recomputes the second-bitmask segments along the path for the new code.
    fn refresh(&mut self) {
        let code = self.current();
        let mut seg = self.tree.root_char_segment(self.x, code);
        for t in 0..self.path.len() {
            self.work += 1;
            if t > 0 {
                let (parent, child) = (self.path[t - 1].0, self.path[t].0);
                let side = self.tree.side_of(child).unwrap();
                seg = self.tree.child_segment(parent, side, seg, true);
            }
            self.path[t].2 = seg;
        }
    }

    fn visit(&mut self) -> Result<()> {
        let tree = self.tree;
        let (u, _, _) = *self.path.last().unwrap();
        if tree.children(u).is_none() {
            return Ok(());
        }
        for side in [Side::Left, Side::Right] {
            self.work += 1;
            let (_, seg1, seg2) = *self.path.last().unwrap();
            let all = tree.count_side(self.ti, self.x, u, side, seg1)?;
            if all == 0 {
                continue;
            }
            let code = self.current();
            if tree.count_side_char(self.ti, self.x, u, side, code, seg2)? == all {
                self.emit(code, all);
                continue;
            }
            let c = tree.child(u, side).unwrap();
            for (code, k) in tree.edge_preceding_rle(self.ti, self.x, c)? {
                self.emit(code, k);
            }
            let (_, seg1, seg2) = *self.path.last().unwrap();
            let segs = (tree.child_segment(u, side, seg1, false), tree.child_segment(u, side, seg2, true));
            self.path.push((c, segs.0, segs.1));
            self.visit()?;
            self.path.pop();
        }
        Ok(())
    }
}

impl WaveletSuffixTree {
    /// Number of suffixes of `x` that sort strictly below `y`.
    pub fn substring_suffix_rank(&self, ti: &TextIndex, x: SubstringHandle, y: SubstringHandle) -> Result<usize> {
        self.check_query(ti, x)?;
        if y.start > ti.len() + 1 || (y.body_len() > 0 && y.end > ti.len() + 1) {
            return Err(Error::InvalidSubstring { start: y.start, end: y.end, len: ti.len() });
        }
        // leftmost leaf strictly above y
        let r = self.leaves.partition_point(|&u| {
            let k = self.leaf_start(u as usize).unwrap();
            ti.compare(self.suffix_handle(ti, k), y) != Ordering::Greater
        });
        if r == self.leaves.len() {
            // every suffix of x is at most y; only a suffix equal to y is not below it
            let equal = y.len() <= x.len() && ti.lcp(x.skip(x.len() - y.len()), y) == y.len();
            return Ok(x.len() - equal as usize);
        }
        let mut path = Vec::new();
        let mut u = self.leaves[r] as usize;
        while let Some(p) = self.parent(u) {
            path.push(u);
            u = p;
        }
        let mut total = 0;
        let mut seg = self.root_segment(x);
        let mut u = self.root();
        for &c in path.iter().rev() {
            let side = self.side_of(c).unwrap();
            if side == Side::Right {
                total += self.count_side(ti, x, u, Side::Left, seg)?;
            }
            let list = self.edge_suffix_list(ti, x, c)?;
            if !list.is_empty() {
                let largest = list.suffix(list.get(list.len() - 1).unwrap());
                if ti.compare(largest, y) == Ordering::Less {
                    total += list.len();
                } else {
                    let (mut lo, mut hi) = (0, list.len() - 1);
                    while lo < hi {
                        let mid = (lo + hi) / 2;
                        if ti.compare(list.suffix(list.get(mid).unwrap()), y) == Ordering::Less {
                            lo = mid + 1;
                        } else {
                            hi = mid;
                        }
                    }
                    return Ok(total + lo);
                }
            }
            seg = self.child_segment(u, side, seg, false);
            u = c;
        }
        Ok(total)
    }

    /// The `k`-th smallest suffix of `x` (1-based).
    pub fn substring_suffix_select(&self, ti: &TextIndex, x: SubstringHandle, k: usize) -> Result<SubstringHandle> {
        self.check_query(ti, x)?;
        if k == 0 || k > x.len() {
            return Err(Error::OrdinalOutOfRange { k, count: x.len() });
        }
        let mut before = 0;
        let mut seg = self.root_segment(x);
        let mut u = self.root();
        loop {
            if self.children(u).is_none() {
                return Err(Error::Invariant("suffix selection reached a leaf".into()));
            }
            let left = self.count_side(ti, x, u, Side::Left, seg)?;
            let side = if before + left >= k {
                Side::Left
            } else {
                before += left;
                Side::Right
            };
            let c = self.child(u, side).unwrap();
            let list = self.edge_suffix_list(ti, x, c)?;
            if before + list.len() >= k {
                return Ok(list.suffix(list.get(k - before - 1).unwrap()));
            }
            before += list.len();
            seg = self.child_segment(u, side, seg, false);
            u = c;
        }
    }

    /// Run-length encoding of the BWT of `x`, over the sorted suffixes of `x$`.
    pub fn substring_bwt_rle(&self, ti: &TextIndex, x: SubstringHandle) -> Result<BwtRuns> {
        Ok(self.substring_bwt_rle_counted(ti, x)?.0)
    }

    /// [`substring_bwt_rle`](Self::substring_bwt_rle) together with the number
    /// of node visits and segment updates it made.
    pub fn substring_bwt_rle_counted(&self, ti: &TextIndex, x: SubstringHandle) -> Result<(BwtRuns, usize)> {
        self.check_query(ti, x)?;
        let mut walk = Walk { tree: self, ti, x, runs: vec![(ti.code(x.end), 1)], path: Vec::new(), work: 0 };
        walk.path.push((self.root(), self.root_segment(x), (0, 0)));
        walk.refresh();
        walk.visit()?;
        // the suffix x itself is preceded by $ rather than by the character before it
        let at = self.substring_suffix_rank(ti, x, x)? + 1;
        let runs = set_run(&walk.runs, at, 0);
        let out = runs.into_iter().map(|(c, k)| ((c > 0).then(|| c as u64 - 1), k)).collect();
        Ok((out, walk.work))
    }
}

/// Replaces the symbol at index `at` of a run-length encoding.
fn set_run(runs: &[(u32, usize)], at: usize, code: u32) -> Vec<(u32, usize)> {
    let mut out: Vec<(u32, usize)> = Vec::with_capacity(runs.len() + 2);
    let mut push = |c: u32, k: usize| {
        if k == 0 {
            return;
        }
        match out.last_mut() {
            Some(r) if r.0 == c => r.1 += k,
            _ => out.push((c, k)),
        }
    };
    let mut pos = 0;
    for &(c, k) in runs {
        if (pos..pos + k).contains(&at) {
            push(c, at - pos);
            push(code, 1);
            push(c, pos + k - at - 1);
        } else {
            push(c, k);
        }
        pos += k;
    }
    out
}
