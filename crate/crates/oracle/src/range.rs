//! Scan and sort answers for range queries on 1-based inclusive ranges.

pub fn range_rank(a: &[i64], i: usize, j: usize, x: i64) -> usize {
    a[i - 1..j].iter().filter(|&&v| v < x).count()
}

pub fn range_select(a: &[i64], i: usize, j: usize, k: usize) -> i64 {
    let mut s = a[i - 1..j].to_vec();
    *s.select_nth_unstable(k - 1).1
}

pub fn range_successor(a: &[i64], i: usize, j: usize, c: i64) -> Option<i64> {
    a[i - 1..j].iter().copied().filter(|&v| v >= c).min()
}
