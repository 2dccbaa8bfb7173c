//! Naive suffix sorting, BWT and substring enumeration. Strings use the
//! encoding of [`crate::strings`] (`$` is -1).

/// Offsets (0-based) of the suffixes of `x`, in sorted order.
pub fn sorted_suffixes(x: &[i64]) -> Vec<usize> {
    let mut v: Vec<usize> = (0..x.len()).collect();
    v.sort_by(|&a, &b| x[a..].cmp(&x[b..]));
    v
}

/// Number of suffixes of `x` strictly below `y`.
pub fn suffix_rank(x: &[i64], y: &[i64]) -> usize {
    (0..x.len()).filter(|&a| x[a..] < *y).count()
}

/// BWT of `x` over the sorted suffixes of `x$`, `$` written as -1.
pub fn bwt(x: &[i64]) -> Vec<i64> {
    let mut t = x.to_vec();
    t.push(-1);
    let mut v: Vec<usize> = (0..t.len()).collect();
    v.sort_by(|&a, &b| t[a..].cmp(&t[b..]));
    v.into_iter().map(|a| if a == 0 { -1 } else { t[a - 1] }).collect()
}

pub fn run_length(s: &[i64]) -> Vec<(i64, usize)> {
    let mut out: Vec<(i64, usize)> = Vec::new();
    for &c in s {
        match out.last_mut() {
            Some(r) if r.0 == c => r.1 += 1,
            _ => out.push((c, 1)),
        }
    }
    out
}

/// All distinct non-empty substrings of `t`, sorted.
pub fn distinct_substrings(t: &[i64]) -> Vec<Vec<i64>> {
    let mut v: Vec<Vec<i64>> = Vec::new();
    for a in 0..t.len() {
        for b in a + 1..=t.len() {
            v.push(t[a..b].to_vec());
        }
    }
    v.sort();
    v.dedup();
    v
}
