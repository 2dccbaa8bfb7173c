use std::collections::BTreeMap;

/// Bitmask of every inner node, keyed by root path, built by routing one
/// symbol at a time. `paths[c]` is the root-to-leaf path of symbol `c`.
pub fn bitmasks(s: &[u64], paths: &BTreeMap<u64, Vec<bool>>) -> BTreeMap<Vec<bool>, Vec<bool>> {
    let mut out: BTreeMap<Vec<bool>, Vec<bool>> = BTreeMap::new();
    // every proper prefix of a leaf path is an inner node, even if no symbol passes it
    for p in paths.values() {
        for k in 0..p.len() {
            out.entry(p[..k].to_vec()).or_default();
        }
    }
    for c in s {
        let p = &paths[c];
        for k in 0..p.len() {
            out.get_mut(&p[..k]).unwrap().push(p[k]);
        }
    }
    out
}

/// Paths of the perfect tree of the given height: the binary expansion of `c`.
pub fn perfect_paths(sigma: u64, height: u32) -> BTreeMap<u64, Vec<bool>> {
    (0..sigma).map(|c| (c, (0..height).rev().map(|b| (c >> b) & 1 == 1).collect())).collect()
}

/// Subsequence of `s` of symbols whose path starts with `prefix`.
pub fn subsequence(s: &[u64], paths: &BTreeMap<u64, Vec<bool>>, prefix: &[bool]) -> Vec<u64> {
    s.iter().copied().filter(|c| paths[c].starts_with(prefix)).collect()
}

/// Digits `<= c` among the first `i`.
pub fn gen_rank(digits: &[u64], c: u64, i: usize) -> usize {
    digits[..i].iter().filter(|&&x| x <= c).count()
}

/// 1-based position of the `k`-th digit equal to `c`.
pub fn gen_select(digits: &[u64], c: u64, k: usize) -> Option<usize> {
    digits.iter().enumerate().filter(|(_, &x)| x == c).nth(k.checked_sub(1)?).map(|(p, _)| p + 1)
}
