use super::{WaveletSuffixTree, WstNode};
use crate::error::{Error, Result};
use crate::stringology::TextIndex;
use crate::wavelet::{ShapeNode, TreeShape, WaveletTree, MAX_SHAPE_HEIGHT};

/// Node of the multi-way tree of power-of-two prefixes.
enum Multi {
    /// Shifted depth `h`: the node stands for a string of length `2^(h-1)`.
    Inner { h: u32, children: Vec<usize> },
    /// Local suffix start.
    Leaf(u32),
}

/// The binary tree under construction.
struct Arena {
    nodes: Vec<ShapeNode>,
    levels: Vec<usize>,
}

impl Arena {
    fn leaf(&mut self, start: u32, level: usize) -> usize {
        self.nodes.push(ShapeNode::Leaf { symbol: start as u64 - 1 });
        self.levels.push(level);
        self.nodes.len() - 1
    }

    fn inner(&mut self, left: usize, right: usize, level: usize) -> usize {
        self.nodes.push(ShapeNode::Inner { left, right });
        self.levels.push(level);
        self.nodes.len() - 1
    }
}

fn shifted_log(lcp: u32) -> u32 {
    if lcp == 0 {
        0
    } else {
        32 - lcp.leading_zeros()
    }
}

/// Multi-way tree whose leaves are the sorted suffixes and whose LCA depths
/// are `⌊log₂ lcp⌋ + 1` (0 for lcp 0), built with a stack. Returns the root.
fn multiway(sa: &[usize], lcp: &[u32]) -> (Vec<Multi>, usize) {
    let mut t = vec![Multi::Inner { h: 0, children: Vec::new() }];
    let mut stack = vec![0usize];
    for (r, &start) in sa.iter().enumerate() {
        if r > 0 {
            let d = shifted_log(lcp[r]);
            while depth(&t, *stack.last().unwrap()) > d {
                stack.pop();
            }
            let top = *stack.last().unwrap();
            if depth(&t, top) < d {
                let Multi::Inner { children, .. } = &mut t[top] else { unreachable!() };
                let last = children.pop().unwrap();
                let v = t.len();
                t.push(Multi::Inner { h: d, children: vec![last] });
                let Multi::Inner { children, .. } = &mut t[top] else { unreachable!() };
                children.push(v);
                stack.push(v);
            }
        }
        let leaf = t.len();
        t.push(Multi::Leaf(start as u32));
        let Multi::Inner { children, .. } = &mut t[*stack.last().unwrap()] else { unreachable!() };
        children.push(leaf);
    }
    (t, 0)
}

fn depth(t: &[Multi], u: usize) -> u32 {
    match t[u] {
        Multi::Inner { h, .. } => h,
        Multi::Leaf(_) => u32::MAX,
    }
}

/// Replaces a node with children of the given weights by a binary tree whose
/// inner nodes inherit `level`. Children are placed as the middle leaves of the
/// tree with LCA sequence `P - p_i`, where `p_i` is the top bit in which
/// consecutive prefix sums of the weights differ; the minimum of every range of
/// that sequence is unique. Where a node gets three parts, the lighter adjacent
/// pair is merged first.
fn binarize(arena: &mut Arena, parts: &[(usize, u64)], level: usize) -> usize {
    let mut prefix = 0u64;
    let p: Vec<u32> = parts
        .iter()
        .map(|&(_, w)| {
            let next = prefix + w;
            let bit = 63 - (prefix ^ next).leading_zeros();
            prefix = next;
            bit
        })
        .collect();
    let top = *p.iter().max().unwrap();
    let lca: Vec<u32> = p.iter().map(|&b| top - b).collect();
    cartesian(arena, parts, &lca, 0, parts.len(), level).0
}

fn cartesian(arena: &mut Arena, parts: &[(usize, u64)], lca: &[u32], lo: usize, hi: usize, level: usize) -> (usize, u64) {
    if hi - lo == 1 {
        return parts[lo];
    }
    let m = (lo..hi).min_by_key(|&i| lca[i]).unwrap();
    let left = (m > lo).then(|| cartesian(arena, parts, lca, lo, m, level));
    let right = (m + 1 < hi).then(|| cartesian(arena, parts, lca, m + 1, hi, level));
    let mid = parts[m];
    let join = |arena: &mut Arena, a: (usize, u64), b: (usize, u64)| (arena.inner(a.0, b.0, level), a.1 + b.1);
    match (left, right) {
        (None, None) => mid,
        (Some(a), None) => join(arena, a, mid),
        (None, Some(b)) => join(arena, mid, b),
        (Some(a), Some(b)) => {
            if a.1 <= b.1 {
                let am = join(arena, a, mid);
                join(arena, am, b)
            } else {
                let mb = join(arena, mid, b);
                join(arena, a, mb)
            }
        }
    }
}

/// Converts the multi-way subtree at `u` into `arena`; returns (node, leaf count).
fn convert(t: &[Multi], u: usize, arena: &mut Arena, leaf_level: &dyn Fn(u32) -> usize) -> (usize, u64) {
    match &t[u] {
        Multi::Leaf(start) => (arena.leaf(*start, leaf_level(*start)), 1),
        Multi::Inner { h, children } => {
            let level = if *h == 0 { 1 } else { 1usize << h };
            let parts: Vec<(usize, u64)> = children.iter().map(|&c| convert(t, c, arena, leaf_level)).collect();
            if parts.len() == 1 {
                // only possible for the root of a one-leaf tree
                return parts[0];
            }
            let weight = parts.iter().map(|p| p.1).sum();
            if parts.len() == 2 {
                (arena.inner(parts[0].0, parts[1].0, level), weight)
            } else {
                (binarize(arena, &parts, level), weight)
            }
        }
    }
}

pub(super) fn build(ti: &TextIndex, off: usize, len: usize) -> Result<WaveletSuffixTree> {
    let local;
    let index = if off == 0 && len == ti.len() {
        ti
    } else {
        let v: Vec<u64> = (off + 1..=off + len).map(|p| ti.char_at(p).unwrap()).collect();
        local = TextIndex::with_alphabet(&v, ti.sigma())?;
        &local
    };
    let sa = index.suffix_array();
    let (t, troot) = multiway(&sa, index.lcp_table());
    let mut arena = Arena { nodes: Vec::with_capacity(4 * sa.len()), levels: Vec::with_capacity(4 * sa.len()) };
    let suffix_len = |start: u32| len + 2 - start as usize;
    let (root, _) = convert(&t, troot, &mut arena, &|s| 2 * suffix_len(s));
    drop(t);
    let Arena { nodes, levels } = arena;
    let shape = TreeShape::new(nodes, root)?;

    // min/max starts and parents, children before parents in the arena
    let count = shape.nodes().len();
    let mut data = vec![WstNode { level: 0, min_start: 0, max_start: 0, parent: u32::MAX }; count];
    for u in 0..count {
        data[u].level = levels[u];
        match shape.node(u) {
            ShapeNode::Leaf { symbol } => {
                data[u].min_start = symbol as u32 + 1;
                data[u].max_start = symbol as u32 + 1;
            }
            ShapeNode::Inner { left, right } => {
                data[u].min_start = data[left].min_start;
                data[u].max_start = data[right].max_start;
                data[left].parent = u as u32;
                data[right].parent = u as u32;
            }
        }
    }
    let mut leaves = Vec::with_capacity(sa.len());
    let mut stack = vec![root];
    while let Some(u) = stack.pop() {
        match shape.node(u) {
            ShapeNode::Leaf { .. } => leaves.push(u as u32),
            ShapeNode::Inner { left, right } => {
                stack.push(right);
                stack.push(left);
            }
        }
    }
    let in_order = leaves.iter().zip(&sa).all(|(&u, &s)| data[u as usize].min_start as usize == s);
    if !in_order {
        return Err(Error::Invariant("leaf order differs from suffix order".into()));
    }

    let preceding = |k: usize| if k == 1 { 0 } else { ti.code(off + k - 1) };
    let mut char_sorted: Vec<u32> = (1..=len as u32 + 1).collect();
    char_sorted.sort_by_key(|&k| (preceding(k as usize), k));
    let mut buckets: Vec<(u32, u32)> = Vec::new();
    for (i, &k) in char_sorted.iter().enumerate() {
        let c = preceding(k as usize);
        if buckets.last().is_none_or(|&(b, _)| b != c) {
            buckets.push((c, i as u32));
        }
    }
    let seq1: Vec<u64> = (0..=len as u64).collect();
    let seq2: Vec<u64> = char_sorted.iter().map(|&k| k as u64 - 1).collect();
    let by_pos = WaveletTree::build_shaped_within(&seq1, &shape, None, MAX_SHAPE_HEIGHT)?;
    let by_char = WaveletTree::build_shaped_within(&seq2, &shape, None, MAX_SHAPE_HEIGHT)?;
    Ok(WaveletSuffixTree { n: ti.len(), off, len, nodes: data, by_pos, by_char, char_sorted_starts: char_sorted, buckets, leaves })
}
