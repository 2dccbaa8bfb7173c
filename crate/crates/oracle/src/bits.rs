/// Occurrences of `b` among the first `i` bits.
pub fn rank(bits: &[bool], b: bool, i: usize) -> usize {
    bits[..i].iter().filter(|&&x| x == b).count()
}

/// 1-based position of the `k`-th occurrence of `b`.
pub fn select(bits: &[bool], b: bool, k: usize) -> Option<usize> {
    if k == 0 {
        return None;
    }
    let mut seen = 0;
    for (p, &x) in bits.iter().enumerate() {
        if x == b {
            seen += 1;
            if seen == k {
                return Some(p + 1);
            }
        }
    }
    None
}

/// Entries whose `t`-th most significant bit (of `width`) is 0, then 1, then the bits.
pub fn partition(values: &[u64], width: u32, t: u32) -> (Vec<u64>, Vec<u64>, Vec<bool>) {
    let bit = |v: u64| (v >> (width - 1 - t)) & 1 == 1;
    let l0 = values.iter().copied().filter(|&v| !bit(v)).collect();
    let l1 = values.iter().copied().filter(|&v| bit(v)).collect();
    (l0, l1, values.iter().map(|&v| bit(v)).collect())
}
