use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wavesuffix::wavelet::{bits_for, ShapeNode};
use wavesuffix::{DigitTree, GeneralizedRankSelect, PackedList, TreeShape, WaveletTree};
use wavesuffix_oracle::wavelet as oracle;

const FIGURE_INPUT: [u64; 16] = [12, 7, 11, 15, 9, 6, 4, 0, 1, 2, 10, 3, 13, 5, 8, 14];

fn label_of(path: &[bool]) -> (u32, u128) {
    (path.len() as u32, path.iter().fold(0u128, |a, &b| (a << 1) | b as u128))
}

fn parse_path(s: &str) -> Vec<bool> {
    s.chars().map(|c| c == '1').collect()
}

fn bitstring(v: &[bool]) -> String {
    v.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn assert_matches_oracle(wt: &WaveletTree, s: &[u64], paths: &BTreeMap<u64, Vec<bool>>) {
    for (path, bits) in oracle::bitmasks(s, paths) {
        let (depth, label) = label_of(&path);
        let got = wt.bitmask(depth, label).unwrap_or_else(|| panic!("missing node {}", bitstring(&path)));
        assert_eq!(got.to_string(), bitstring(&bits), "node {}", bitstring(&path));
    }
}

#[test]
fn figure_tree_bitmasks() {
    let s = PackedList::pack(&FIGURE_INPUT, 4).unwrap();
    let wt = WaveletTree::build_binary(&s, 16, None).unwrap();
    let expected = [
        ("", "1011100000101011"),
        ("0", "11100001"),
        ("1", "10100101"),
        ("00", "0011"),
        ("01", "1100"),
        ("10", "1010"),
        ("11", "0101"),
        ("000", "01"),
        ("001", "01"),
        ("010", "01"),
        ("011", "10"),
        ("100", "10"),
        ("101", "10"),
        ("110", "01"),
        ("111", "10"),
    ];
    for (path, bits) in expected {
        let (depth, label) = label_of(&parse_path(path));
        assert_eq!(wt.bitmask(depth, label).unwrap().to_string(), bits, "node '{path}'");
    }
    assert_eq!(wt.access(1).unwrap(), 12);
}

#[test]
fn figure_big_node_lists_with_stride_two() {
    let s = PackedList::pack(&FIGURE_INPUT, 4).unwrap();
    let mut lists = BTreeMap::new();
    WaveletTree::build_binary_with(&s, 16, Some(2), |depth, label, list| {
        lists.insert((depth, label), list.unpack());
    })
    .unwrap();
    assert_eq!(lists[&(2, 0b00)], vec![0, 1, 2, 3]);
    assert_eq!(lists[&(2, 0b01)], vec![7, 6, 4, 5]);
    assert_eq!(lists[&(2, 0b10)], vec![11, 9, 10, 8]);
    assert_eq!(lists[&(2, 0b11)], vec![12, 15, 13, 14]);
    assert_eq!(lists[&(0, 0)], FIGURE_INPUT.to_vec());
    assert_eq!(lists.len(), 5);
}

#[test]
fn single_symbol_input() {
    let s = PackedList::pack(&[5], 3).unwrap();
    let wt = WaveletTree::build_binary(&s, 8, None).unwrap();
    for (depth, label) in [(0u32, 0u128), (1, 1), (2, 0b10)] {
        assert_eq!(wt.bitmask(depth, label).unwrap().len(), 1);
    }
    assert_eq!(wt.bitmask(1, 0).unwrap().len(), 0);
    assert_eq!(wt.access(1).unwrap(), 5);
}

#[test]
fn empty_input_and_errors() {
    let s = PackedList::new(4).unwrap();
    let wt = WaveletTree::build_binary(&s, 16, None).unwrap();
    assert_eq!(wt.len(), 0);
    assert_eq!(wt.bitmask(0, 0).unwrap().len(), 0);
    assert!(wt.access(1).is_err());
    let s = PackedList::pack(&[3, 9], 4).unwrap();
    assert!(WaveletTree::build_binary(&s, 8, None).is_err());
}

fn skewed_shape() -> TreeShape {
    // a at depth 1 on the left; b, c below the right child
    let nodes = vec![
        ShapeNode::Inner { left: 1, right: 2 },
        ShapeNode::Leaf { symbol: 0 },
        ShapeNode::Inner { left: 3, right: 4 },
        ShapeNode::Leaf { symbol: 1 },
        ShapeNode::Leaf { symbol: 2 },
    ];
    TreeShape::new(nodes, 0).unwrap()
}

#[test]
fn skewed_shape_routes_directly() {
    let s = [0, 1, 2, 0, 1]; // "abcab"
    let wt = WaveletTree::build_shaped(&s, &skewed_shape(), None).unwrap();
    assert_eq!(wt.bitmask(0, 0).unwrap().to_string(), "01101");
    assert_eq!(wt.bitmask(1, 1).unwrap().to_string(), "010");
    assert_eq!(wt.bitmask(1, 0), None);
    let paths: BTreeMap<u64, Vec<bool>> = [(0, parse_path("0")), (1, parse_path("10")), (2, parse_path("11"))].into_iter().collect();
    assert_matches_oracle(&wt, &s, &paths);
    for (i, &c) in s.iter().enumerate() {
        assert_eq!(wt.access(i + 1).unwrap(), c);
    }
    assert!(WaveletTree::build_shaped(&[3], &skewed_shape(), None).is_err());
}

#[test]
fn perfect_shape_coincides_with_binary_build() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for sigma in [2u64, 5, 16, 100] {
        let s: Vec<u64> = (0..777).map(|_| rng.gen_range(0..sigma)).collect();
        let packed = PackedList::pack(&s, bits_for(sigma)).unwrap();
        let a = WaveletTree::build_binary(&packed, sigma, Some(2)).unwrap();
        let b = WaveletTree::build_shaped(&s, &TreeShape::perfect(sigma), Some(2)).unwrap();
        for depth in 0..a.height() {
            assert_eq!(a.level(depth).bits(), b.level(depth).bits());
        }
    }
}

#[test]
fn huffman_shape_total_bits() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let weights = [400u32, 200, 100, 50, 20, 10, 5, 1];
    let total: u32 = weights.iter().sum();
    let s: Vec<u64> = (0..5000)
        .map(|_| {
            let mut r = rng.gen_range(0..total);
            weights
                .iter()
                .position(|&w| {
                    if r < w {
                        true
                    } else {
                        r -= w;
                        false
                    }
                })
                .unwrap() as u64
        })
        .collect();
    let mut freqs = vec![0u64; 8];
    for &c in &s {
        freqs[c as usize] += 1;
    }
    let shape = TreeShape::huffman(&freqs).unwrap();
    let wt = WaveletTree::build_shaped(&s, &shape, None).unwrap();
    let expected: u64 = (0..8).map(|c| freqs[c] * shape.depth(shape.leaf_of(c as u64).unwrap()) as u64).sum();
    assert_eq!(wt.total_bits() as u64, expected);
    let paths: BTreeMap<u64, Vec<bool>> = (0..8u64)
        .map(|c| {
            let u = shape.leaf_of(c).unwrap();
            let d = shape.depth(u);
            (c, (0..d).rev().map(|b| (shape.label(u) >> b) & 1 == 1).collect())
        })
        .collect();
    assert_matches_oracle(&wt, &s, &paths);
}

#[test]
fn shaped_height_bound_is_enforced() {
    // a caterpillar with 40 leaves has height 39 > 4 * 6 + 8
    let leaves = 40u64;
    let mut nodes = Vec::new();
    let mut right = {
        nodes.push(ShapeNode::Leaf { symbol: leaves - 1 });
        0
    };
    for c in (0..leaves - 1).rev() {
        nodes.push(ShapeNode::Leaf { symbol: c });
        let l = nodes.len() - 1;
        nodes.push(ShapeNode::Inner { left: l, right });
        right = nodes.len() - 1;
    }
    let shape = TreeShape::new(nodes, right).unwrap();
    assert_eq!(shape.height(), 39);
    assert!(matches!(WaveletTree::build_shaped(&[0, 1], &shape, None), Err(wavesuffix::Error::HeightExceeded { .. })));
}

#[test]
fn degree_four_root_digits() {
    let s = PackedList::pack(&FIGURE_INPUT, 4).unwrap();
    let wt = WaveletTree::build_binary(&s, 16, None).unwrap();
    let dt = DigitTree::build(&wt, 4).unwrap();
    let expect: Vec<u64> = FIGURE_INPUT.iter().map(|c| c >> 2).collect();
    assert_eq!(expect, vec![3, 1, 2, 3, 2, 1, 1, 0, 0, 0, 2, 0, 3, 1, 2, 3]);
    assert_eq!(dt.node(0, 0).to_vec(), expect);
    for p in 0..4u64 {
        let low: Vec<u64> = FIGURE_INPUT.iter().filter(|&&c| c >> 2 == p).map(|c| c & 3).collect();
        assert_eq!(dt.node(1, p).to_vec(), low);
    }
}

#[test]
fn degree_extremes() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let s: Vec<u64> = (0..300).map(|_| rng.gen_range(0..16)).collect();
    let wt = WaveletTree::build_binary(&PackedList::pack(&s, 4).unwrap(), 16, None).unwrap();
    let full = DigitTree::build(&wt, 16).unwrap();
    assert_eq!(full.depth(), 1);
    assert_eq!(full.node(0, 0).to_vec(), s);
    let binary = DigitTree::build(&wt, 2).unwrap();
    let paths = oracle::perfect_paths(16, 4);
    for (path, bits) in oracle::bitmasks(&s, &paths) {
        let (depth, label) = label_of(&path);
        let digits: Vec<bool> = binary.node(depth, label as u64).to_vec().iter().map(|&x| x == 1).collect();
        assert_eq!(digits, bits);
    }
    assert!(DigitTree::build(&wt, 6).is_err());
}

#[test]
fn degree_with_padding_reconstructs() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (sigma, d) in [(32u64, 4usize), (1000, 8), (7, 16), (300, 256), (2, 8)] {
        let s: Vec<u64> = (0..2000).map(|_| rng.gen_range(0..sigma)).collect();
        let wt = WaveletTree::build_binary(&PackedList::pack(&s, bits_for(sigma)).unwrap(), sigma, None).unwrap();
        let dt = DigitTree::build(&wt, d).unwrap();
        let pb = dt.padded_bits();
        assert_eq!(pb % d.trailing_zeros(), 0);
        let top: Vec<u64> = s.iter().map(|c| c >> (pb - d.trailing_zeros())).collect();
        assert_eq!(dt.node(0, 0).to_vec(), top);
        for (i, &c) in s.iter().enumerate() {
            assert_eq!(dt.access(i), c, "sigma {sigma} d {d} i {i}");
        }
    }
}

#[test]
fn gen_rank_select_examples() {
    let g = GeneralizedRankSelect::new(PackedList::pack(&[3, 1, 2, 3], 2).unwrap());
    // prefix 3,1,2 holds one digit <= 1 and two digits <= 2
    assert_eq!(g.rank(1, 3), 1);
    assert_eq!(g.rank(2, 3), 2);
    assert_eq!(g.select(3, 2), Some(4));
    assert_eq!(g.select(0, 1), None);
    for i in 0..=4 {
        assert_eq!(g.rank(3, i), i);
    }
}

#[test]
fn gen_rank_select_random_against_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for w in [1u32, 2, 3, 4, 5, 8] {
        let n = if w == 1 { 70_000 } else { 10_000 };
        let digits: Vec<u64> = (0..n).map(|_| rng.gen_range(0..1u64 << w)).collect();
        let g = GeneralizedRankSelect::new(PackedList::pack(&digits, w).unwrap());
        let d = 1u64 << w;
        let mut counts = vec![0usize; d as usize];
        for i in 0..=n {
            if i % 97 == 0 || i == n {
                for c in 0..d {
                    let expect: usize = counts[..=c as usize].iter().sum();
                    assert_eq!(g.rank(c as usize, i), expect, "w {w} c {c} i {i}");
                }
            }
            if i < n {
                counts[digits[i] as usize] += 1;
            }
        }
        for _ in 0..2000 {
            let c = rng.gen_range(0..d);
            let k = rng.gen_range(0..=counts[c as usize] + 1);
            assert_eq!(g.select(c as usize, k), oracle::gen_select(&digits, c, k));
        }
        for c in 0..d {
            let k = counts[c as usize];
            assert_eq!(g.select(c as usize, k), oracle::gen_select(&digits, c, k));
            assert_eq!(oracle::gen_rank(&digits, c, n), g.rank(c as usize, n));
        }
    }
}

#[test]
fn access_reconstructs_uniform_random_sequence() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let s: Vec<u64> = (0..100_000).map(|_| rng.gen_range(0..256)).collect();
    let wt = WaveletTree::build_binary(&PackedList::pack(&s, 8).unwrap(), 256, None).unwrap();
    for (i, &c) in s.iter().enumerate() {
        assert_eq!(wt.access(i + 1).unwrap(), c);
    }
}

fn check_symbol_rank_select(wt: &WaveletTree, s: &[u64], sigma: u64) {
    for c in 0..sigma + 1 {
        let pos: Vec<usize> = (0..s.len()).filter(|&p| s[p] == c).map(|p| p + 1).collect();
        for i in 0..=s.len() {
            assert_eq!(wt.rank(c, i).unwrap(), s[..i].iter().filter(|&&x| x == c).count(), "rank({c}, {i})");
        }
        for k in 0..=pos.len() + 1 {
            let expect = if k == 0 { None } else { pos.get(k - 1).copied() };
            assert_eq!(wt.select(c, k), expect, "select({c}, {k})");
        }
    }
    assert!(wt.rank(0, s.len() + 1).is_err());
}

#[test]
fn symbol_rank_and_select_against_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for sigma in [1u64, 2, 5, 16] {
        let s: Vec<u64> = (0..300).map(|_| rng.gen_range(0..sigma)).collect();
        let wt = WaveletTree::build_binary(&PackedList::pack(&s, bits_for(sigma)).unwrap(), sigma, None).unwrap();
        check_symbol_rank_select(&wt, &s, sigma);
    }
    let s: Vec<u64> = (0..200).map(|_| rng.gen_range(0..3)).collect();
    check_symbol_rank_select(&WaveletTree::build_shaped(&s, &skewed_shape(), None).unwrap(), &s, 3);
    let wt = WaveletTree::build_binary(&PackedList::pack(&FIGURE_INPUT, 4).unwrap(), 16, None).unwrap();
    assert_eq!(wt.rank(12, 16).unwrap(), 1);
    assert_eq!(wt.select(0, 1), Some(8));
}

#[test]
fn level_mass_is_conserved() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let s: Vec<u64> = (0..3000).map(|_| rng.gen_range(0..16)).collect();
    let wt = WaveletTree::build_binary(&PackedList::pack(&s, 4).unwrap(), 16, None).unwrap();
    for depth in 0..wt.height() {
        assert_eq!(wt.level(depth).len(), s.len());
    }
    let shape = skewed_shape();
    let s: Vec<u64> = (0..500).map(|_| rng.gen_range(0..3)).collect();
    let wt = WaveletTree::build_shaped(&s, &shape, None).unwrap();
    assert_eq!(wt.level(0).len(), 500);
    assert_eq!(wt.level(1).len(), s.iter().filter(|&&c| c != 0).count());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn packed_build_equals_naive(sigma_idx in 0usize..4, tau in 0u32..3, seed in any::<u64>(), n in 0usize..3000) {
        let sigma = [2u64, 4, 16, 256][sigma_idx];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s: Vec<u64> = (0..n).map(|_| rng.gen_range(0..sigma)).collect();
        let tau = if tau == 0 { None } else { Some(tau) };
        let wt = WaveletTree::build_binary(&PackedList::pack(&s, bits_for(sigma)).unwrap(), sigma, tau).unwrap();
        let paths = oracle::perfect_paths(sigma, bits_for(sigma));
        for (path, bits) in oracle::bitmasks(&s, &paths) {
            let (depth, label) = label_of(&path);
            prop_assert_eq!(wt.bitmask(depth, label).unwrap().iter().collect::<Vec<_>>(), bits);
        }
    }

    #[test]
    fn random_shapes_route_every_symbol_to_its_leaf(seed in any::<u64>(), leaves in 1usize..40, n in 0usize..400, tau in 1u32..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // random full binary tree by repeatedly splitting a random leaf
        let mut nodes = vec![ShapeNode::Leaf { symbol: 0 }];
        let mut leaf_ids = vec![0usize];
        while leaf_ids.len() < leaves {
            let k = rng.gen_range(0..leaf_ids.len());
            let u = leaf_ids.swap_remove(k);
            nodes.push(ShapeNode::Leaf { symbol: 0 });
            nodes.push(ShapeNode::Leaf { symbol: 0 });
            nodes[u] = ShapeNode::Inner { left: nodes.len() - 2, right: nodes.len() - 1 };
            leaf_ids.push(nodes.len() - 2);
            leaf_ids.push(nodes.len() - 1);
        }
        for (sym, &u) in leaf_ids.iter().enumerate() {
            nodes[u] = ShapeNode::Leaf { symbol: sym as u64 };
        }
        let shape = match TreeShape::new(nodes, 0) { Ok(s) => s, Err(_) => return Ok(()) };
        let s: Vec<u64> = (0..n).map(|_| rng.gen_range(0..leaves as u64)).collect();
        let wt = match WaveletTree::build_shaped(&s, &shape, Some(tau)) {
            Ok(wt) => wt,
            Err(wavesuffix::Error::HeightExceeded { .. }) => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        for (i, &c) in s.iter().enumerate() {
            prop_assert_eq!(wt.access(i + 1).unwrap(), c);
        }
        let paths: BTreeMap<u64, Vec<bool>> = (0..leaves as u64).map(|c| {
            let u = shape.leaf_of(c).unwrap();
            (c, (0..shape.depth(u)).rev().map(|b| (shape.label(u) >> b) & 1 == 1).collect())
        }).collect();
        for (path, bits) in oracle::bitmasks(&s, &paths) {
            let (depth, label) = label_of(&path);
            prop_assert_eq!(wt.bitmask(depth, label).unwrap().iter().collect::<Vec<_>>(), bits);
        }
    }
}
