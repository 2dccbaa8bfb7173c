//! Band-by-band bitmask construction.
//!
//! Every `tau` levels a node is "big" and its full subsequence S_u is
//! materialised; the nodes below a big node are built from short lists of
//! `tau`-bit label windows split with [`PackedList::partition_by_bit`]. Each band
//! first routes the big lists one band down, then emits the bitmasks of the
//! current band, so only two generations of S lists are alive at once.

use crate::bitpack::{BitVector, PackedList};

/// How the builder sees a tree: padded labels per symbol and which
/// (depth, label) pairs are inner nodes.
pub(crate) trait Topology {
    fn height(&self) -> u32;
    fn label(&self, symbol: u64) -> u128;
    fn is_inner(&self, depth: u32, label: u128) -> bool;
}

/// Receives construction output in left-to-right order within every depth.
pub(crate) trait BandSink {
    fn bitmask(&mut self, depth: u32, label: u128, bits: BitVector);
    fn big_node(&mut self, _depth: u32, _label: u128, _s: &PackedList) {}
}

#[inline]
fn window(label: u128, height: u32, depth: u32, width: u32) -> u64 {
    ((label >> (height - depth - width)) as u64) & ((1u64 << width) - 1)
}

pub(crate) fn build_bands<T: Topology, S: BandSink>(symbols: &PackedList, topo: &T, tau: u32, sink: &mut S) {
    let height = topo.height();
    let tau = tau.max(1);
    if height == 0 || !topo.is_inner(0, 0) {
        return;
    }
    let mut bigs: Vec<(u128, PackedList)> = vec![(0, symbols.clone())];
    let mut depth = 0;
    while depth < height && !bigs.is_empty() {
        let width = tau.min(height - depth);
        for (label, s) in &bigs {
            sink.big_node(depth, *label, s);
        }
        let next_depth = depth + width;
        let mut next = Vec::new();
        if next_depth < height {
            for (label, s) in &bigs {
                let mut buckets: Vec<Option<PackedList>> = (0..1u128 << width)
                    .map(|t| topo.is_inner(next_depth, (label << width) | t).then(|| PackedList::new(s.width()).expect("symbol width")))
                    .collect();
                for x in s.iter() {
                    let t = window(topo.label(x), height, depth, width);
                    if let Some(b) = &mut buckets[t as usize] {
                        b.push(x);
                    }
                }
                for (t, b) in buckets.into_iter().enumerate() {
                    if let Some(b) = b {
                        next.push(((label << width) | t as u128, b));
                    }
                }
            }
        }
        for (label, s) in &bigs {
            let mut short = PackedList::with_capacity(width, s.len()).expect("window width");
            for x in s.iter() {
                short.push(window(topo.label(x), height, depth, width));
            }
            let mut current = vec![(*label, short)];
            for beta in 0..width {
                let mut deeper = Vec::with_capacity(current.len() * 2);
                for (q, l) in current {
                    if !topo.is_inner(depth + beta, q) {
                        continue;
                    }
                    let (l0, l1, bits) = l.partition_by_bit(beta).expect("bit within window");
                    sink.bitmask(depth + beta, q, bits);
                    if beta + 1 < width {
                        deeper.push((q << 1, l0));
                        deeper.push(((q << 1) | 1, l1));
                    }
                }
                current = deeper;
            }
        }
        bigs = next;
        depth = next_depth;
    }
}
