//! Prefix-doubling suffix array with counting sorts, and Kasai's LCP.

/// Suffix array (0-based starts) of `t`, whose last character is a unique
/// minimum. Characters lie in `[0, sigma)`.
pub(super) fn suffix_array(t: &[u32], sigma: usize) -> Vec<u32> {
    let m = t.len();
    let mut rank: Vec<u32> = t.to_vec();
    let mut sa: Vec<u32> = (0..m as u32).collect();
    counting_sort(&mut sa, &rank, sigma.max(m));
    let mut tmp = vec![0u32; m];
    let mut next_rank = vec![0u32; m];
    let mut classes = renumber(&sa, &mut next_rank, |a, b| rank[a] == rank[b]);
    std::mem::swap(&mut rank, &mut next_rank);
    let mut k = 1;
    while classes < m {
        // order by the second half first: suffixes without one come first
        let mut j = 0;
        for i in m - k..m {
            tmp[j] = i as u32;
            j += 1;
        }
        for &p in &sa {
            if p as usize >= k {
                tmp[j] = p - k as u32;
                j += 1;
            }
        }
        sa.copy_from_slice(&tmp);
        counting_sort(&mut sa, &rank, classes);
        let key = |a: usize| (rank[a], if a + k < m { rank[a + k] as i64 } else { -1 });
        classes = renumber(&sa, &mut next_rank, |a, b| key(a) == key(b));
        std::mem::swap(&mut rank, &mut next_rank);
        k *= 2;
    }
    sa
}

/// Stable sort of `sa` by `key[sa[i]]`, keys below `range`.
fn counting_sort(sa: &mut [u32], key: &[u32], range: usize) {
    let mut count = vec![0usize; range + 1];
    for &p in sa.iter() {
        count[key[p as usize] as usize + 1] += 1;
    }
    for i in 1..count.len() {
        count[i] += count[i - 1];
    }
    let mut out = vec![0u32; sa.len()];
    for &p in sa.iter() {
        let c = &mut count[key[p as usize] as usize];
        out[*c] = p;
        *c += 1;
    }
    sa.copy_from_slice(&out);
}

/// Assigns class numbers in `sa` order; returns the number of classes.
fn renumber(sa: &[u32], rank: &mut [u32], same: impl Fn(usize, usize) -> bool) -> usize {
    let mut class = 0u32;
    rank[sa[0] as usize] = 0;
    for w in sa.windows(2) {
        if !same(w[0] as usize, w[1] as usize) {
            class += 1;
        }
        rank[w[1] as usize] = class;
    }
    class as usize + 1
}

pub(super) fn kasai(t: &[u32], sa: &[u32], isa: &[u32]) -> Vec<u32> {
    let m = t.len();
    let mut lcp = vec![0u32; m];
    let mut h = 0usize;
    for i in 0..m {
        let r = isa[i] as usize;
        if r == 0 {
            h = 0;
            continue;
        }
        let j = sa[r - 1] as usize;
        while i + h < m && j + h < m && t[i + h] == t[j + h] {
            h += 1;
        }
        lcp[r] = h as u32;
        h = h.saturating_sub(1);
    }
    lcp
}
