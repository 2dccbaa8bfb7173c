use std::time::Instant;

use anyhow::anyhow;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wavesuffix::{PackedList, RangeIndex, ScaledIndex, SubstringHandle, TextIndex, WaveletSuffixTree, WaveletTree};

use crate::{BenchKind, Failure};

pub const HEADER: &str = "kind\tn\tq\tbuild_ns\tquery_ns_total\tquery_ns_p50";

/// Number of successor queries cross-checked between the offline and online answers.
const CROSS_CHECK: usize = 1000;

struct Row {
    kind: &'static str,
    build_ns: u128,
    /// Per-query times; empty for batch rows, which report `total` only.
    times: Vec<u128>,
    total: u128,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, u128) {
    let t0 = Instant::now();
    let v = f();
    (v, t0.elapsed().as_nanos())
}

/// Runs `q` queries, timing each.
fn per_query<E>(q: usize, mut f: impl FnMut(usize) -> Result<(), E>) -> Result<(Vec<u128>, u128), E> {
    let mut times = Vec::with_capacity(q);
    for t in 0..q {
        let (r, ns) = timed(|| f(t));
        r?;
        times.push(ns);
    }
    let total = times.iter().sum();
    Ok((times, total))
}

fn range_of(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> (usize, usize) {
    let len = rng.gen_range(1..=n.min(max_len));
    let i = rng.gen_range(1..=n + 1 - len);
    (i, i + len - 1)
}

fn measure(kind: BenchKind, n: usize, q: usize, rng: &mut ChaCha8Rng) -> anyhow::Result<Vec<Row>> {
    let row = |kind, build_ns, (times, total): (Vec<u128>, u128)| Row { kind, build_ns, times, total };
    Ok(match kind {
        BenchKind::Wavelet => {
            let s: Vec<u64> = (0..n).map(|_| rng.gen_range(0..256)).collect();
            let packed = PackedList::pack(&s, 8)?;
            let (wt, b) = timed(|| WaveletTree::build_binary(&packed, 256, None));
            let wt = wt?;
            let pos: Vec<usize> = (0..q).map(|_| rng.gen_range(1..=n)).collect();
            vec![row("wavelet", b, per_query(q, |t| wt.access(pos[t]).map(|_| ()))?)]
        }
        BenchKind::Range | BenchKind::Successor => {
            let a: Vec<i64> = (0..n).map(|_| rng.gen_range(0..1 << 30)).collect();
            let (idx, b) = timed(|| RangeIndex::build(&a, 8, None));
            let idx = idx?;
            let queries: Vec<(usize, usize, i64)> = (0..q)
                .map(|_| {
                    let i = rng.gen_range(1..=n);
                    let j = rng.gen_range(i..=n);
                    (i, j, rng.gen_range(0..1 << 30))
                })
                .collect();
            if kind == BenchKind::Range {
                let ks: Vec<usize> = queries.iter().map(|&(i, j, _)| rng.gen_range(1..=j - i + 1)).collect();
                vec![row("range", b, per_query(q, |t| idx.range_select(queries[t].0, queries[t].1, ks[t]).map(|_| ()))?)]
            } else {
                let mut online = Vec::with_capacity(q);
                let times = per_query(q, |t| {
                    let (i, j, c) = queries[t];
                    idx.range_successor(i, j, c).map(|v| online.push(v))
                })?;
                let (batch, total) = timed(|| idx.range_successor_batch(&queries));
                let batch = batch?;
                for t in (0..q).step_by((q / CROSS_CHECK).max(1)) {
                    if batch[t] != online[t] {
                        return Err(anyhow!("offline and online successor answers differ at query {t}: {:?} vs {:?}", batch[t], online[t]));
                    }
                }
                vec![row("successor_online", b, times), Row { kind: "successor_offline", build_ns: b, times: Vec::new(), total }]
            }
        }
        BenchKind::Wst | BenchKind::Scaled => {
            let w: Vec<u64> = (0..n).map(|_| rng.gen_range(0..4)).collect();
            let (ti, tb) = timed(|| TextIndex::build(&w));
            let ti = ti?;
            let xs: Vec<((usize, usize), usize)> = (0..q)
                .map(|_| {
                    let (i, j) = range_of(rng, n, 1000);
                    ((i, j), rng.gen_range(1..=j - i + 1))
                })
                .collect();
            let select = |t: usize| SubstringHandle::new(xs[t].0 .0, xs[t].0 .1);
            if kind == BenchKind::Wst {
                let (tree, b) = timed(|| WaveletSuffixTree::build(&ti));
                let tree = tree?;
                vec![row("wst", tb + b, per_query(q, |t| tree.substring_suffix_select(&ti, select(t), xs[t].1).map(|_| ()))?)]
            } else {
                let (idx, b) = timed(|| ScaledIndex::build(&ti));
                let idx = idx?;
                vec![row("scaled", tb + b, per_query(q, |t| idx.substring_suffix_select(&ti, select(t), xs[t].1).map(|_| ()))?)]
            }
        }
    })
}

fn p50(times: &[u128]) -> String {
    if times.is_empty() {
        return "-".into();
    }
    let mut v = times.to_vec();
    v.sort_unstable();
    v[(v.len() - 1) / 2].to_string()
}

pub fn run(kind: BenchKind, ns: &[usize], qs: &[usize], seed: u64) -> Result<(), Failure> {
    println!("{HEADER}");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for &n in ns {
        if n == 0 {
            continue;
        }
        for &q in qs {
            let rows = measure(kind, n, q, &mut rng).map_err(|e| {
                if e.to_string().starts_with("offline and online") {
                    eprintln!("error: {e}");
                    Failure::Verification
                } else {
                    Failure::Data(e)
                }
            })?;
            for r in rows {
                println!("{}\t{n}\t{q}\t{}\t{}\t{}", r.kind, r.build_ns, r.total, p50(&r.times));
            }
        }
    }
    Ok(())
}
