//! Naive string answers. Strings are `w$` slices with `$` encoded as -1.

use std::cmp::Ordering;

/// `w$` as signed codes.
pub fn with_sentinel(w: &[u64]) -> Vec<i64> {
    w.iter().map(|&c| c as i64).chain([-1]).collect()
}

/// 1-based inclusive substring of `w$`; `(0, 0)` is empty.
pub fn sub(t: &[i64], start: usize, end: usize) -> Vec<i64> {
    if start == 0 {
        Vec::new()
    } else {
        t[start - 1..end].to_vec()
    }
}

/// Suffix starts of `w$` (1-based) in sorted order, by comparing whole suffixes.
pub fn suffix_order(t: &[i64]) -> Vec<usize> {
    let mut v: Vec<usize> = (1..=t.len()).collect();
    v.sort_by(|&a, &b| t[a - 1..].cmp(&t[b - 1..]));
    v
}

pub fn lcp(x: &[i64], y: &[i64]) -> usize {
    x.iter().zip(y).take_while(|(a, b)| a == b).count()
}

pub fn compare(x: &[i64], y: &[i64]) -> Ordering {
    x.cmp(y)
}

pub fn compare_trimmed(x: &[i64], y: &[i64], l: usize) -> Ordering {
    x[..x.len().min(l)].cmp(&y[..y.len().min(l)])
}

/// `lcp(x, y^∞)` and the order of `x` against `y^∞`, by expanding `y^∞` past `|x|`.
pub fn lcp_with_power(x: &[i64], y: &[i64]) -> (usize, Ordering) {
    let power: Vec<i64> = y.iter().copied().cycle().take(2 * x.len() + y.len()).collect();
    let l = lcp(x, &power);
    let o = if l == x.len() { Ordering::Less } else { x[l].cmp(&power[l]) };
    (l, o)
}

/// 1-based starts of `y` inside `x`, as positions of the enclosing text given `x_start`.
pub fn occurrences(x: &[i64], y: &[i64], x_start: usize) -> Vec<usize> {
    if y.len() > x.len() {
        return Vec::new();
    }
    (0..=x.len() - y.len()).filter(|&i| x[i..i + y.len()] == *y).map(|i| x_start + i).collect()
}

pub fn in_interval(z: &[i64], low: &[i64], high: &[i64], l: usize, low_open: bool, high_open: bool) -> bool {
    let a = compare_trimmed(z, low, l);
    let b = compare_trimmed(z, high, l);
    (a == Ordering::Greater || (!low_open && a == Ordering::Equal)) && (b == Ordering::Less || (!high_open && b == Ordering::Equal))
}
