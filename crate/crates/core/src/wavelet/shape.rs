use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShapeNode {
    Inner { left: usize, right: usize },
    Leaf { symbol: u64 },
}

/// A full binary tree whose leaves are labelled with distinct symbols.
///
/// The label of a node is its root path read as bits (0 = left, 1 = right),
/// stored right-aligned together with its depth.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeShape {
    nodes: Vec<ShapeNode>,
    root: usize,
    height: u32,
    depth: Vec<u32>,
    label: Vec<u128>,
    /// Leaf node of each symbol, `usize::MAX` when the symbol has no leaf.
    leaf_of: Vec<usize>,
    #[serde(skip)]
    lookup: HashMap<(u32, u128), usize>,
}

pub const MAX_SHAPE_HEIGHT: u32 = 127;

impl TreeShape {
    /// Validates `nodes` as a full binary tree rooted at `root` with distinct leaf symbols.
    pub fn new(nodes: Vec<ShapeNode>, root: usize) -> Result<Self> {
        if root >= nodes.len() {
            return Err(Error::InvalidShape(format!("root {root} out of range")));
        }
        let mut depth = vec![u32::MAX; nodes.len()];
        let mut label = vec![0u128; nodes.len()];
        let mut stack = vec![root];
        depth[root] = 0;
        let mut height = 0;
        let mut max_symbol = 0u64;
        let mut seen = 0;
        while let Some(u) = stack.pop() {
            seen += 1;
            height = height.max(depth[u]);
            match nodes[u] {
                ShapeNode::Inner { left, right } => {
                    for (c, bit) in [(left, 0u128), (right, 1u128)] {
                        if c >= nodes.len() || depth[c] != u32::MAX {
                            return Err(Error::InvalidShape(format!("child {c} of node {u} is missing or shared")));
                        }
                        if depth[u] + 1 > MAX_SHAPE_HEIGHT {
                            return Err(Error::HeightExceeded { height: depth[u] as usize + 1, bound: MAX_SHAPE_HEIGHT as usize });
                        }
                        depth[c] = depth[u] + 1;
                        label[c] = (label[u] << 1) | bit;
                        stack.push(c);
                    }
                }
                ShapeNode::Leaf { symbol } => max_symbol = max_symbol.max(symbol),
            }
        }
        if seen != nodes.len() {
            return Err(Error::InvalidShape("unreachable nodes".into()));
        }
        let mut leaf_of = vec![usize::MAX; max_symbol as usize + 1];
        for (u, node) in nodes.iter().enumerate() {
            if let ShapeNode::Leaf { symbol } = *node {
                if leaf_of[symbol as usize] != usize::MAX {
                    return Err(Error::InvalidShape(format!("symbol {symbol} has two leaves")));
                }
                leaf_of[symbol as usize] = u;
            }
        }
        let mut shape = TreeShape { nodes, root, height, depth, label, leaf_of, lookup: HashMap::new() };
        shape.rebuild_lookup();
        Ok(shape)
    }

    /// Restores the (depth, label) dictionary after deserialization.
    pub fn rebuild_lookup(&mut self) {
        self.lookup = (0..self.nodes.len()).map(|u| ((self.depth[u], self.label[u]), u)).collect();
    }

    /// The perfect tree over `2^⌈log₂ sigma⌉` leaves; leaf `c` has label `c`.
    pub fn perfect(sigma: u64) -> Self {
        let h = super::bits_for(sigma);
        let mut nodes = Vec::with_capacity(2 << h);
        fn rec(nodes: &mut Vec<ShapeNode>, depth: u32, label: u64, h: u32) -> usize {
            if depth == h {
                nodes.push(ShapeNode::Leaf { symbol: label });
                return nodes.len() - 1;
            }
            let id = nodes.len();
            nodes.push(ShapeNode::Leaf { symbol: 0 });
            let left = rec(nodes, depth + 1, label << 1, h);
            let right = rec(nodes, depth + 1, (label << 1) | 1, h);
            nodes[id] = ShapeNode::Inner { left, right };
            id
        }
        rec(&mut nodes, 0, 0, h);
        TreeShape::new(nodes, 0).expect("perfect shape is valid")
    }

    /// Huffman tree for the given symbol frequencies (ties broken by creation order).
    pub fn huffman(freqs: &[u64]) -> Result<Self> {
        if freqs.is_empty() {
            return Err(Error::InvalidShape("empty alphabet".into()));
        }
        let mut nodes: Vec<ShapeNode> = (0..freqs.len() as u64).map(|symbol| ShapeNode::Leaf { symbol }).collect();
        if freqs.len() == 1 {
            return TreeShape::new(nodes, 0);
        }
        let mut heap: BinaryHeap<Reverse<(u64, usize)>> = freqs.iter().enumerate().map(|(i, &f)| Reverse((f, i))).collect();
        while heap.len() > 1 {
            let Reverse((fa, a)) = heap.pop().unwrap();
            let Reverse((fb, b)) = heap.pop().unwrap();
            nodes.push(ShapeNode::Inner { left: a, right: b });
            heap.push(Reverse((fa + fb, nodes.len() - 1)));
        }
        let root = heap.pop().unwrap().0 .1;
        TreeShape::new(nodes, root)
    }

    pub fn nodes(&self) -> &[ShapeNode] {
        &self.nodes
    }

    pub fn node(&self, u: usize) -> ShapeNode {
        self.nodes[u]
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn depth(&self, u: usize) -> u32 {
        self.depth[u]
    }

    /// Root-path bits of `u`, right-aligned.
    pub fn label(&self, u: usize) -> u128 {
        self.label[u]
    }

    /// Number of symbol slots (largest leaf symbol + 1).
    pub fn sigma(&self) -> u64 {
        self.leaf_of.len() as u64
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_of.iter().filter(|&&u| u != usize::MAX).count()
    }

    pub fn leaf_of(&self, symbol: u64) -> Option<usize> {
        self.leaf_of.get(symbol as usize).copied().filter(|&u| u != usize::MAX)
    }

    pub fn find(&self, depth: u32, label: u128) -> Option<usize> {
        self.lookup.get(&(depth, label)).copied()
    }

    pub fn is_inner(&self, u: usize) -> bool {
        matches!(self.nodes[u], ShapeNode::Inner { .. })
    }

    pub fn children(&self, u: usize) -> Option<(usize, usize)> {
        match self.nodes[u] {
            ShapeNode::Inner { left, right } => Some((left, right)),
            ShapeNode::Leaf { .. } => None,
        }
    }

    /// Label of the leaf of `symbol` padded with zero bits to the full height.
    pub fn padded_label(&self, symbol: u64) -> Option<u128> {
        self.leaf_of(symbol).map(|u| self.label[u] << (self.height - self.depth[u]))
    }
}
