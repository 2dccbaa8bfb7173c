//! Oracle cross-checks. Each trial is an input sequence plus one query; a
//! failing trial is shrunk by deleting input chunks while it keeps failing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use wavesuffix::wavelet::bits_for;
use wavesuffix::{BitVector, PackedList, RangeIndex, RankSelect, ScaledIndex, SubstringHandle, TextIndex, WaveletSuffixTree, WaveletTree};
use wavesuffix_oracle::{bits, range, strings, wavelet, wst};

use crate::format::{Index, Kind, Structure};
use crate::query::{answer, QueryRecord};

pub const SUITES: [&str; 9] = ["bitpack", "wavelet", "range", "batch", "occurrences", "wst", "bwt", "scaled", "roundtrip"];

#[derive(Clone, Debug)]
struct Case {
    input: Vec<i64>,
    /// Leading `ranges` pairs are 1-based inclusive ranges into `input`.
    query: Vec<i64>,
}

/// A suite: how to draw a case, how many leading query pairs are ranges, and
/// the check, which describes a mismatch or error. Invalid queries pass.
struct Suite {
    name: &'static str,
    ranges: usize,
    draw: fn(&mut ChaCha8Rng, usize) -> Case,
    check: fn(&Case, bool) -> Result<(), String>,
}

fn h(i: i64, j: i64) -> SubstringHandle {
    SubstringHandle::new(i as usize, j as usize)
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn mismatch(differs: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if differs {
        Err(why())
    } else {
        Ok(())
    }
}

fn valid_range(n: usize, i: i64, j: i64) -> bool {
    1 <= i && i <= j && j as usize <= n
}

fn draw_range(rng: &mut ChaCha8Rng, n: usize) -> (i64, i64) {
    let i = rng.gen_range(1..=n);
    (i as i64, rng.gen_range(i..=n) as i64)
}

fn text(rng: &mut ChaCha8Rng, n: usize, sigma: i64) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(0..sigma)).collect()
}

/// Off-by-one applied to answers under an injected fault, on ranges of length >= 3.
fn fault(on: bool, len: i64) -> usize {
    (on && len >= 3) as usize
}

fn check_bitpack(c: &Case, f: bool) -> Result<(), String> {
    let b: Vec<bool> = c.input.iter().map(|&v| v != 0).collect();
    let (i, j, bit) = (c.query[0], c.query[1], c.query[2] != 0);
    if !valid_range(b.len(), i, j) {
        return Ok(());
    }
    let rs = RankSelect::new(BitVector::from_bits(b.iter().copied()));
    let (i, j) = (i as usize, j as usize);
    let got = rs.rank(bit, j) - rs.rank(bit, i - 1) + fault(f, (j - i + 1) as i64);
    let expect = bits::rank(&b, bit, j) - bits::rank(&b, bit, i - 1);
    if got != expect {
        return Err(format!("rank difference {got} != {expect}"));
    }
    let k = rs.rank(bit, i - 1) + 1;
    mismatch(rs.select(bit, k) != bits::select(&b, bit, k), || format!("select({bit}, {k})"))
}

fn check_wavelet(c: &Case, f: bool) -> Result<(), String> {
    let s: Vec<u64> = c.input.iter().map(|&v| v as u64).collect();
    let (i, j, sym) = (c.query[0], c.query[1], c.query[2] as u64);
    if !valid_range(s.len(), i, j) {
        return Ok(());
    }
    let sigma = s.iter().max().map_or(1, |&m| m + 1);
    let wt = WaveletTree::build_binary(&PackedList::pack(&s, bits_for(sigma).max(1)).map_err(err)?, sigma, None).map_err(err)?;
    let paths = wavelet::perfect_paths(sigma, bits_for(sigma));
    for (path, bm) in wavelet::bitmasks(&s, &paths) {
        let label = path.iter().fold(0u128, |a, &b| (a << 1) | b as u128);
        if wt.bitmask(path.len() as u32, label).map(|b| b.iter().collect::<Vec<_>>()) != Some(bm) {
            return Err(format!("bitmask at depth {}", path.len()));
        }
    }
    let (i, j) = (i as usize, j as usize);
    if wt.access(j).map_err(err)? != s[j - 1] {
        return Err(format!("access({j})"));
    }
    let got = wt.rank(sym, j).map_err(err)? - wt.rank(sym, i - 1).map_err(err)? + fault(f, (j - i + 1) as i64);
    let expect = s[i - 1..j].iter().filter(|&&x| x == sym).count();
    mismatch(got != expect, || format!("rank of {sym} in [{i}, {j}]: {got} != {expect}"))
}

fn check_range(c: &Case, f: bool) -> Result<(), String> {
    let a = &c.input;
    let (i, j, x, k) = (c.query[0], c.query[1], c.query[2], c.query[3]);
    if !valid_range(a.len(), i, j) {
        return Ok(());
    }
    let idx = RangeIndex::build(a, 8, None).map_err(err)?;
    let (i, j) = (i as usize, j as usize);
    let k = 1 + (k as usize - 1) % (j - i + 1);
    let rank = idx.range_rank(i, j, x).map_err(err)? + fault(f, (j - i + 1) as i64);
    if rank != range::range_rank(a, i, j, x) {
        return Err(format!("range_rank({i}, {j}, {x}) = {rank}"));
    }
    if idx.range_select(i, j, k).map_err(err)? != range::range_select(a, i, j, k) {
        return Err(format!("range_select({i}, {j}, {k})"));
    }
    mismatch(idx.range_successor(i, j, x).map_err(err)? != range::range_successor(a, i, j, x), || format!("range_successor({i}, {j}, {x})"))
}

/// The batch is generated from a seed so it stays valid while the input shrinks.
fn check_batch(c: &Case, f: bool) -> Result<(), String> {
    let a = &c.input;
    if a.is_empty() {
        return Ok(());
    }
    let n = a.len();
    let mut rng = ChaCha8Rng::seed_from_u64(c.query[0] as u64);
    let queries: Vec<(usize, usize, i64)> = (0..n)
        .map(|_| {
            let i = rng.gen_range(1..=n);
            (i, rng.gen_range(i..=n), rng.gen_range(-2..=1002))
        })
        .collect();
    let idx = RangeIndex::build(a, 8, None).map_err(err)?;
    let mut got = idx.range_successor_batch(&queries).map_err(err)?;
    if f && n >= 3 {
        got[0] = got[0].map(|v| v + 1);
    }
    for (q, &(i, j, x)) in queries.iter().enumerate() {
        if got[q] != range::range_successor(a, i, j, x) {
            return Err(format!("batch answer to ({i}, {j}, {x}) is {:?}", got[q]));
        }
    }
    Ok(())
}

fn check_occurrences(c: &Case, f: bool) -> Result<(), String> {
    let w: Vec<u64> = c.input.iter().map(|&v| v as u64).collect();
    let (i, j, ys, ye) = (c.query[0], c.query[1], c.query[2], c.query[3]);
    if !valid_range(w.len(), i, j) || !valid_range(w.len(), ys, ye) || j - i + 1 >= 3 * (ye - ys + 2) {
        return Ok(());
    }
    let ti = TextIndex::build(&w).map_err(err)?;
    let ws = strings::with_sentinel(&w);
    let mut got: Vec<usize> = ti.occurrences(h(i, j), h(ys, ye)).map_err(err)?.iter().flat_map(|p| p.terms().collect::<Vec<_>>()).collect();
    got.sort_unstable();
    if f && j - i + 1 >= 3 {
        got.push(0);
    }
    let expect = strings::occurrences(&strings::sub(&ws, i as usize, j as usize), &strings::sub(&ws, ys as usize, ye as usize), i as usize);
    mismatch(got != expect, || format!("occurrences {got:?} != {expect:?}"))
}

fn check_wst(c: &Case, f: bool) -> Result<(), String> {
    let w: Vec<u64> = c.input.iter().map(|&v| v as u64).collect();
    let (i, j, ys, ye, k) = (c.query[0], c.query[1], c.query[2], c.query[3], c.query[4]);
    if !valid_range(w.len(), i, j) || !valid_range(w.len(), ys, ye) {
        return Ok(());
    }
    let ti = TextIndex::build(&w).map_err(err)?;
    let t = WaveletSuffixTree::build(&ti).map_err(err)?;
    let ws = strings::with_sentinel(&w);
    let xs = strings::sub(&ws, i as usize, j as usize);
    let x = h(i, j);
    let rank = t.substring_suffix_rank(&ti, x, h(ys, ye)).map_err(err)? + fault(f, j - i + 1);
    let expect = wst::suffix_rank(&xs, &strings::sub(&ws, ys as usize, ye as usize));
    if rank != expect {
        return Err(format!("ss_rank = {rank}, expected {expect}"));
    }
    let k = 1 + (k - 1) % (j - i + 1);
    let got = t.substring_suffix_select(&ti, x, k as usize).map_err(err)?;
    let start = i as usize + wst::sorted_suffixes(&xs)[k as usize - 1];
    if got != SubstringHandle::new(start, j as usize) {
        return Err(format!("ss_select({k}) = [{}, {}], expected start {start}", got.start, got.end));
    }
    mismatch(t.substring_suffix_rank(&ti, x, got).map_err(err)? != k as usize - 1, || format!("rank of select({k}) is not {}", k - 1))
}

fn check_bwt(c: &Case, f: bool) -> Result<(), String> {
    let w: Vec<u64> = c.input.iter().map(|&v| v as u64).collect();
    let (i, j) = (c.query[0], c.query[1]);
    if !valid_range(w.len(), i, j) {
        return Ok(());
    }
    let ti = TextIndex::build(&w).map_err(err)?;
    let t = WaveletSuffixTree::build(&ti).map_err(err)?;
    let mut got: Vec<(i64, usize)> =
        t.substring_bwt_rle(&ti, h(i, j)).map_err(err)?.iter().map(|&(c, k)| (c.map_or(-1, |c| c as i64), k)).collect();
    if f && j - i + 1 >= 3 {
        got.reverse();
    }
    let ws = strings::with_sentinel(&w);
    let expect = wst::run_length(&wst::bwt(&ws[i as usize - 1..j as usize]));
    mismatch(got != expect, || format!("bwt runs {got:?} != {expect:?}"))
}

fn check_scaled(c: &Case, f: bool) -> Result<(), String> {
    let w: Vec<u64> = c.input.iter().map(|&v| v as u64).collect();
    let (i, j, ys, ye, k) = (c.query[0], c.query[1], c.query[2], c.query[3], c.query[4]);
    if !valid_range(w.len(), i, j) || !valid_range(w.len(), ys, ye) {
        return Ok(());
    }
    let ti = TextIndex::build(&w).map_err(err)?;
    let (t, s) = (WaveletSuffixTree::build(&ti).map_err(err)?, ScaledIndex::build(&ti).map_err(err)?);
    let (x, y, k) = (h(i, j), h(ys, ye), 1 + (k as usize - 1) % (j - i + 1) as usize);
    if s.substring_suffix_rank(&ti, x, y).map_err(err)? + fault(f, j - i + 1) != t.substring_suffix_rank(&ti, x, y).map_err(err)? {
        return Err("scaled ss_rank differs".into());
    }
    if s.substring_suffix_select(&ti, x, k).map_err(err)? != t.substring_suffix_select(&ti, x, k).map_err(err)? {
        return Err(format!("scaled ss_select({k}) differs"));
    }
    mismatch(s.substring_bwt_rle(&ti, x).map_err(err)? != t.substring_bwt_rle(&ti, x).map_err(err)?, || "scaled bwt differs".into())
}

/// save -> load -> query equals the in-memory answer for every structure kind.
fn check_roundtrip(c: &Case, f: bool) -> Result<(), String> {
    let (i, j, v) = (c.query[0], c.query[1], c.query[2]);
    if !valid_range(c.input.len(), i, j) {
        return Ok(());
    }
    let queries = |kind: Kind| -> Vec<(crate::query::QueryKind, Vec<i64>)> {
        use crate::query::QueryKind::*;
        match kind {
            Kind::Wavelet => vec![(Access, vec![j]), (Rank, vec![v, j]), (Select, vec![v, 1])],
            Kind::Range => vec![(Access, vec![i]), (Rank, vec![i, j, v]), (Select, vec![i, j, 1]), (Successor, vec![i, j, v])],
            Kind::Wst | Kind::Scaled => vec![(SsRank, vec![i, j, i, i]), (SsSelect, vec![i, j, 1]), (BwtRle, vec![i, j])],
        }
    };
    for kind in [Kind::Wavelet, Kind::Range, Kind::Wst, Kind::Scaled] {
        let built = Index::build(kind, &c.input, false, 8, None).map_err(err)?;
        let bytes = built.to_bytes().map_err(err)?;
        let loaded = Index::from_bytes(&bytes).map_err(err)?;
        if matches!(loaded.structure, Structure::Wavelet(_)) != (kind == Kind::Wavelet) || loaded.meta != built.meta {
            return Err(format!("{} header differs after reload", kind.name()));
        }
        for (qk, args) in queries(kind) {
            let q = QueryRecord { line: 0, kind: qk, args };
            let a = answer(&built, &q).map_err(|e| e.to_string());
            let mut b = answer(&loaded, &q).map_err(|e| e.to_string());
            if f && j - i + 1 >= 3 {
                b = Ok("corrupt".into());
            }
            if a != b {
                return Err(format!("{} {q:?}: {a:?} before save, {b:?} after load", kind.name()));
            }
        }
    }
    Ok(())
}

fn suites() -> Vec<Suite> {
    vec![
        Suite {
            name: "bitpack",
            ranges: 1,
            draw: |rng, n| {
                let d = [0.05, 0.5, 0.95][rng.gen_range(0..3)];
                let input = (0..n).map(|_| rng.gen_bool(d) as i64).collect();
                let (i, j) = draw_range(rng, n);
                Case { input, query: vec![i, j, rng.gen_range(0..2)] }
            },
            check: check_bitpack,
        },
        Suite {
            name: "wavelet",
            ranges: 1,
            draw: |rng, n| {
                let sigma = [2, 5, 16, 256][rng.gen_range(0..4)];
                let input = text(rng, n, sigma);
                let (i, j) = draw_range(rng, n);
                Case { input, query: vec![i, j, rng.gen_range(0..sigma)] }
            },
            check: check_wavelet,
        },
        Suite {
            name: "range",
            ranges: 1,
            draw: |rng, n| {
                let input = (0..n).map(|_| rng.gen_range(-50..=50)).collect();
                let (i, j) = draw_range(rng, n);
                Case { input, query: vec![i, j, rng.gen_range(-52..=52), rng.gen_range(1..=n as i64)] }
            },
            check: check_range,
        },
        Suite {
            name: "batch",
            ranges: 0,
            draw: |rng, n| Case { input: (0..n).map(|_| rng.gen_range(0..=1000)).collect(), query: vec![rng.gen_range(0..i64::MAX)] },
            check: check_batch,
        },
        Suite {
            name: "occurrences",
            ranges: 2,
            draw: |rng, n| {
                let input = if rng.gen_bool(0.5) { text(rng, n, 2) } else { (0..n as i64).map(|k| k % 3).collect() };
                let m = rng.gen_range(1..=n.min(8));
                let ys = rng.gen_range(1..=n + 1 - m);
                let len = rng.gen_range(1..3 * (m + 1)).min(n);
                let xs = rng.gen_range(1..=n + 1 - len);
                Case { input, query: vec![xs as i64, (xs + len - 1) as i64, ys as i64, (ys + m - 1) as i64] }
            },
            check: check_occurrences,
        },
        Suite {
            name: "wst",
            ranges: 2,
            draw: |rng, n| {
                let sigma = rng.gen_range(1..=4);
                let input = text(rng, n, sigma);
                let (i, j) = draw_range(rng, n);
                let (ys, ye) = draw_range(rng, n);
                Case { input, query: vec![i, j, ys, ye.min(ys + 10), rng.gen_range(1..=n as i64)] }
            },
            check: check_wst,
        },
        Suite {
            name: "bwt",
            ranges: 1,
            draw: |rng, n| {
                let sigma = rng.gen_range(1..=6);
                let input = text(rng, n, sigma);
                let (i, j) = draw_range(rng, n);
                Case { input, query: vec![i, j] }
            },
            check: check_bwt,
        },
        Suite {
            name: "scaled",
            ranges: 2,
            draw: |rng, n| {
                let input = text(rng, n, 3);
                let m = 1 + (n as f64).powf(rng.gen_range(0.0..1.0)) as usize;
                let i = rng.gen_range(1..=n + 1 - m.min(n));
                let (ys, ye) = draw_range(rng, n);
                Case { input, query: vec![i as i64, (i + m.min(n) - 1) as i64, ys, ye.min(ys + 10), rng.gen_range(1..=n as i64)] }
            },
            check: check_scaled,
        },
        Suite {
            name: "roundtrip",
            ranges: 1,
            draw: |rng, n| {
                let input = text(rng, n, 4);
                let (i, j) = draw_range(rng, n);
                Case { input, query: vec![i, j, rng.gen_range(0..4)] }
            },
            check: check_roundtrip,
        },
    ]
}

/// Query after deleting input position `p` (1-based), or `None` if a range empties.
fn adjust(query: &[i64], ranges: usize, p: i64) -> Option<Vec<i64>> {
    let mut q = query.to_vec();
    for r in 0..ranges {
        let (i, j) = (q[2 * r], q[2 * r + 1]);
        if p < i {
            q[2 * r] = i - 1;
            q[2 * r + 1] = j - 1;
        } else if p <= j {
            if i == j {
                return None;
            }
            q[2 * r + 1] = j - 1;
        }
    }
    Some(q)
}

fn minimize(suite: &Suite, mut case: Case, fault: bool) -> Case {
    let mut chunk = (case.input.len() / 2).max(1);
    loop {
        let mut start = 0;
        while start < case.input.len() {
            let end = (start + chunk).min(case.input.len());
            let mut q = Some(case.query.clone());
            for p in (start..end).rev() {
                q = q.and_then(|q| adjust(&q, suite.ranges, p as i64 + 1));
            }
            let shrunk = q.map(|query| {
                let mut input = case.input.clone();
                input.drain(start..end);
                Case { input, query }
            });
            match shrunk {
                Some(c) if !c.input.is_empty() && (suite.check)(&c, fault).is_err() => case = c,
                _ => start += chunk,
            }
        }
        if chunk == 1 {
            return case;
        }
        chunk /= 2;
    }
}

struct Report {
    lines: Vec<String>,
    ok: bool,
}

fn run_suite(suite: &Suite, seed: u64, sizes: &[usize], trials: usize, faulty: bool) -> Report {
    let mut lines = Vec::new();
    let mut ok = true;
    for (si, &n) in sizes.iter().enumerate() {
        if n == 0 {
            continue;
        }
        let tag = suite.name.bytes().fold(0u64, |a, b| a.wrapping_mul(31).wrapping_add(b as u64));
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ tag.rotate_left(17) ^ (si as u64) << 48);
        let mut passed = 0;
        let mut first: Option<Case> = None;
        for _ in 0..trials {
            let case = (suite.draw)(&mut rng, n);
            match (suite.check)(&case, faulty) {
                Ok(()) => passed += 1,
                Err(_) if first.is_none() => first = Some(case),
                Err(_) => {}
            }
        }
        lines.push(format!("suite={} size={n} passed={passed}/{trials}", suite.name));
        if let Some(case) = first {
            ok = false;
            let small = minimize(suite, case, faulty);
            let why = (suite.check)(&small, faulty).err().unwrap_or_default();
            lines.push(format!("reproducer suite={} input={:?} query={:?}: {why}", suite.name, small.input, small.query));
        }
    }
    Report { lines, ok }
}

/// Prints the report and returns whether every suite passed.
pub fn run(seed: u64, sizes: &[usize], trials: usize, parallel: bool, inject: Option<&str>) -> bool {
    let all = suites();
    let go = |s: &Suite| run_suite(s, seed, sizes, trials, inject == Some(s.name));
    let reports: Vec<Report> = if parallel { all.par_iter().map(go).collect() } else { all.iter().map(go).collect() };
    let ok = reports.iter().all(|r| r.ok);
    for r in &reports {
        for l in &r.lines {
            println!("{l}");
        }
    }
    println!("{}", if ok { "verify: all suites passed" } else { "verify: FAILED" });
    ok
}
