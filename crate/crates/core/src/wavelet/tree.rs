use serde::{Deserialize, Serialize};

use super::build::{build_bands, BandSink, Topology};
use super::shape::TreeShape;
use super::{bits_for, default_tau, BitSlice};
use crate::bitpack::{BitVector, PackedList, RankSelect};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
enum Layout {
    /// Heap-style perfect tree; node (depth k, label l) owns the symbols with
    /// top-k bits equal to l, so its slice starts at `cum[l << (h - k)]`.
    Perfect { cum: Vec<usize> },
    /// Explicit shape; slice (offset, len) of each inner node inside its level.
    Shaped { shape: TreeShape, spans: Vec<(usize, usize)> },
}

/// Wavelet tree with the bitmasks of each depth concatenated left to right.
/// The bitmask of a node is a contiguous slice of its level.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WaveletTree {
    n: usize,
    sigma: u64,
    height: u32,
    tau: u32,
    levels: Vec<RankSelect>,
    layout: Layout,
}

struct PerfectTopo {
    height: u32,
}

impl Topology for PerfectTopo {
    fn height(&self) -> u32 {
        self.height
    }
    fn label(&self, symbol: u64) -> u128 {
        symbol as u128
    }
    fn is_inner(&self, depth: u32, _label: u128) -> bool {
        depth < self.height
    }
}

struct ShapeTopo<'a> {
    shape: &'a TreeShape,
    labels: Vec<u128>,
}

impl Topology for ShapeTopo<'_> {
    fn height(&self) -> u32 {
        self.shape.height()
    }
    fn label(&self, symbol: u64) -> u128 {
        self.labels[symbol as usize]
    }
    fn is_inner(&self, depth: u32, label: u128) -> bool {
        self.shape.find(depth, label).is_some_and(|u| self.shape.is_inner(u))
    }
}

/// Collects per-depth bitmasks and optionally forwards big-node lists.
struct LevelSink<'a, F: FnMut(u32, u128, &PackedList)> {
    levels: Vec<BitVector>,
    shape: Option<&'a TreeShape>,
    spans: Vec<(usize, usize)>,
    on_big: F,
}

impl<F: FnMut(u32, u128, &PackedList)> BandSink for LevelSink<'_, F> {
    fn bitmask(&mut self, depth: u32, label: u128, bits: BitVector) {
        let level = &mut self.levels[depth as usize];
        if let Some(shape) = self.shape {
            let u = shape.find(depth, label).expect("bitmask for an existing node");
            self.spans[u] = (level.len(), bits.len());
        }
        level.append(&bits);
    }
    fn big_node(&mut self, depth: u32, label: u128, s: &PackedList) {
        (self.on_big)(depth, label, s)
    }
}

fn check_symbols(s: &[u64], sigma: u64) -> Result<()> {
    match s.iter().position(|&c| c >= sigma) {
        Some(index) => Err(Error::SymbolOutOfRange { index, symbol: s[index], sigma }),
        None => Ok(()),
    }
}

impl WaveletTree {
    /// Perfect binary wavelet tree over the alphabet `[0, sigma)`.
    pub fn build_binary(s: &PackedList, sigma: u64, tau: Option<u32>) -> Result<Self> {
        Self::build_binary_with(s, sigma, tau, |_, _, _| {})
    }

    /// As [`build_binary`](Self::build_binary), handing every big-node list
    /// S_u (depth, label, list) to `on_big` as it is produced.
    pub fn build_binary_with<F: FnMut(u32, u128, &PackedList)>(s: &PackedList, sigma: u64, tau: Option<u32>, on_big: F) -> Result<Self> {
        let height = bits_for(sigma);
        let values = s.unpack();
        check_symbols(&values, sigma)?;
        let symbols = if s.width() == height { s.clone() } else { PackedList::pack(&values, height)? };
        let n = values.len();
        let tau = tau.unwrap_or_else(|| default_tau(n));
        let mut cum = vec![0usize; (1usize << height) + 1];
        for &c in &values {
            cum[c as usize + 1] += 1;
        }
        for i in 1..cum.len() {
            cum[i] += cum[i - 1];
        }
        let mut sink = LevelSink { levels: vec![BitVector::new(); height as usize], shape: None, spans: Vec::new(), on_big };
        build_bands(&symbols, &PerfectTopo { height }, tau, &mut sink);
        debug_assert!(sink.levels.iter().all(|l| l.len() == n));
        Ok(WaveletTree {
            n,
            sigma,
            height,
            tau,
            levels: sink.levels.into_iter().map(RankSelect::new).collect(),
            layout: Layout::Perfect { cum },
        })
    }

    /// Wavelet tree shaped like `shape`; symbol `c` is routed along the root path of its leaf.
    pub fn build_shaped(s: &[u64], shape: &TreeShape, tau: Option<u32>) -> Result<Self> {
        let bound = 4 * bits_for(shape.sigma().max(shape.leaf_count() as u64)) + 8;
        Self::build_shaped_within(s, shape, tau, bound)
    }

    /// [`build_shaped`](Self::build_shaped) with an explicit height bound.
    pub(crate) fn build_shaped_within(s: &[u64], shape: &TreeShape, tau: Option<u32>, bound: u32) -> Result<Self> {
        let sigma = shape.sigma();
        let bound = bound.min(super::shape::MAX_SHAPE_HEIGHT);
        if shape.height() > bound {
            return Err(Error::HeightExceeded { height: shape.height() as usize, bound: bound as usize });
        }
        for (index, &c) in s.iter().enumerate() {
            if shape.leaf_of(c).is_none() {
                return Err(Error::SymbolOutOfRange { index, symbol: c, sigma });
            }
        }
        let labels: Vec<u128> = (0..sigma).map(|c| shape.padded_label(c).unwrap_or(0)).collect();
        let topo = ShapeTopo { shape, labels };
        let symbols = PackedList::pack(s, bits_for(sigma))?;
        let tau = tau.unwrap_or_else(|| default_tau(s.len()));
        let height = shape.height();
        let mut sink = LevelSink {
            levels: vec![BitVector::new(); height as usize],
            shape: Some(shape),
            spans: vec![(0, 0); shape.nodes().len()],
            on_big: |_: u32, _: u128, _: &PackedList| {},
        };
        build_bands(&symbols, &topo, tau, &mut sink);
        let spans = sink.spans;
        Ok(WaveletTree {
            n: s.len(),
            sigma,
            height,
            tau,
            levels: sink.levels.into_iter().map(RankSelect::new).collect(),
            layout: Layout::Shaped { shape: shape.clone(), spans },
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn sigma(&self) -> u64 {
        self.sigma
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn tau(&self) -> u32 {
        self.tau
    }

    pub fn is_perfect(&self) -> bool {
        matches!(self.layout, Layout::Perfect { .. })
    }

    pub fn shape(&self) -> Option<&TreeShape> {
        match &self.layout {
            Layout::Shaped { shape, .. } => Some(shape),
            Layout::Perfect { .. } => None,
        }
    }

    pub fn level(&self, depth: u32) -> &RankSelect {
        &self.levels[depth as usize]
    }

    /// Number of input symbols smaller than `c` (perfect trees only).
    pub(crate) fn cum(&self, c: usize) -> usize {
        match &self.layout {
            Layout::Perfect { cum } => cum[c.min(cum.len() - 1)],
            Layout::Shaped { .. } => panic!("cumulative counts exist only for perfect trees"),
        }
    }

    /// Bitmask slice of the perfect-tree node at `depth` with `label`.
    #[inline]
    pub(crate) fn perfect_slice(&self, depth: u32, label: u64) -> BitSlice<'_> {
        let shift = self.height - depth;
        let lo = self.cum((label as usize) << shift);
        let hi = self.cum(((label as usize) + 1) << shift);
        BitSlice::new(&self.levels[depth as usize], lo, hi - lo)
    }

    /// Bitmask slice of shape node `u` (inner nodes only).
    #[inline]
    pub fn node_slice(&self, u: usize) -> BitSlice<'_> {
        match &self.layout {
            Layout::Shaped { shape, spans } => {
                let (off, len) = spans[u];
                BitSlice::new(&self.levels[shape.depth(u) as usize], off, len)
            }
            Layout::Perfect { .. } => panic!("node ids exist only for shaped trees"),
        }
    }

    /// Bitmask of the inner node at `depth` whose root path is `label`.
    pub fn bitmask(&self, depth: u32, label: u128) -> Option<BitVector> {
        let slice = match &self.layout {
            Layout::Perfect { .. } => {
                if depth >= self.height || label >> depth != 0 {
                    return None;
                }
                self.perfect_slice(depth, label as u64)
            }
            Layout::Shaped { shape, .. } => {
                let u = shape.find(depth, label).filter(|&u| shape.is_inner(u))?;
                self.node_slice(u)
            }
        };
        Some(slice.to_bitvector())
    }

    /// Symbol at 1-based position `i`.
    pub fn access(&self, i: usize) -> Result<u64> {
        if i == 0 || i > self.n {
            return Err(Error::PositionOutOfRange { pos: i, len: self.n });
        }
        let mut p = i - 1;
        match &self.layout {
            Layout::Perfect { .. } => {
                let mut label = 0u64;
                for depth in 0..self.height {
                    let slice = self.perfect_slice(depth, label);
                    let b = slice.get(p);
                    p = slice.rank(b, p);
                    label = (label << 1) | b as u64;
                }
                Ok(label)
            }
            Layout::Shaped { shape, .. } => {
                let mut u = shape.root();
                while let Some((l, r)) = shape.children(u) {
                    let slice = self.node_slice(u);
                    let b = slice.get(p);
                    p = slice.rank(b, p);
                    u = if b { r } else { l };
                }
                match shape.node(u) {
                    super::ShapeNode::Leaf { symbol } => Ok(symbol),
                    super::ShapeNode::Inner { .. } => unreachable!(),
                }
            }
        }
    }

    /// Root-to-leaf slices and branch bits of `c`, or `None` if `c` has no leaf.
    fn symbol_path(&self, c: u64) -> Option<Vec<(BitSlice<'_>, bool)>> {
        match &self.layout {
            Layout::Perfect { .. } => (c < self.sigma).then(|| {
                (0..self.height).map(|d| (self.perfect_slice(d, c >> (self.height - d)), (c >> (self.height - d - 1)) & 1 == 1)).collect()
            }),
            Layout::Shaped { shape, .. } => {
                let leaf = shape.leaf_of(c)?;
                let (depth, label) = (shape.depth(leaf), shape.label(leaf));
                let mut u = shape.root();
                let mut path = Vec::with_capacity(depth as usize);
                for d in 0..depth {
                    let b = (label >> (depth - d - 1)) & 1 == 1;
                    path.push((self.node_slice(u), b));
                    let (l, r) = shape.children(u).unwrap();
                    u = if b { r } else { l };
                }
                Some(path)
            }
        }
    }

    /// Occurrences of `c` among the first `i` symbols.
    pub fn rank(&self, c: u64, i: usize) -> Result<usize> {
        if i > self.n {
            return Err(Error::PositionOutOfRange { pos: i, len: self.n });
        }
        let Some(path) = self.symbol_path(c) else { return Ok(0) };
        Ok(path.iter().fold(i, |p, (s, b)| s.rank(*b, p)))
    }

    /// 1-based position of the `k`-th occurrence of `c`.
    pub fn select(&self, c: u64, k: usize) -> Option<usize> {
        let path = self.symbol_path(c)?;
        if k == 0 {
            return None;
        }
        if path.is_empty() {
            return (k <= self.n).then_some(k);
        }
        path.iter().rev().try_fold(k, |p, (s, b)| s.select(*b, p))
    }

    /// Total number of bitmask bits over all nodes.
    pub fn total_bits(&self) -> usize {
        self.levels.iter().map(|l| l.len()).sum()
    }

    /// Restores lookup dictionaries after deserialization.
    pub fn rebuild_lookup(&mut self) {
        if let Layout::Shaped { shape, .. } = &mut self.layout {
            shape.rebuild_lookup();
        }
    }
}
