//! Line-oriented query language: `kind arg1 arg2 ...`, positions 1-based.
//! Blank lines and lines starting with `#` are skipped.

use anyhow::{anyhow, bail, Result};
use rayon::prelude::*;
use wavesuffix::wst::query::BwtRuns;
use wavesuffix::SubstringHandle;

use crate::format::{Index, Kind, Structure};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QueryKind {
    Access,
    Rank,
    Select,
    Successor,
    SsRank,
    SsSelect,
    BwtRle,
}

impl QueryKind {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "access" => QueryKind::Access,
            "rank" => QueryKind::Rank,
            "select" => QueryKind::Select,
            "successor" => QueryKind::Successor,
            "ss_rank" => QueryKind::SsRank,
            "ss_select" => QueryKind::SsSelect,
            "bwt_rle" => QueryKind::BwtRle,
            _ => return None,
        })
    }

    /// Number of arguments for an index kind, `None` if unsupported.
    fn arity(self, kind: Kind) -> Option<usize> {
        use QueryKind::*;
        match (self, kind) {
            (Access, _) => Some(1),
            (Rank | Select, Kind::Wavelet) => Some(2),
            (Rank | Select | Successor, Kind::Range) => Some(3),
            (SsRank, Kind::Wst | Kind::Scaled) => Some(4),
            (SsSelect, Kind::Wst | Kind::Scaled) => Some(3),
            (BwtRle, Kind::Wst | Kind::Scaled) => Some(2),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueryRecord {
    pub line: usize,
    pub kind: QueryKind,
    pub args: Vec<i64>,
}

pub fn parse(text: &str, kind: Kind) -> Result<Vec<QueryRecord>> {
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let mut toks = raw.split_whitespace();
        let Some(head) = toks.next() else { continue };
        if head.starts_with('#') {
            continue;
        }
        let q = QueryKind::parse(head).ok_or_else(|| anyhow!("line {line}: unknown query kind {head:?}"))?;
        let arity = q.arity(kind).ok_or_else(|| anyhow!("line {line}: {head} is not supported by a {} index", kind.name()))?;
        let args =
            toks.map(|t| t.parse::<i64>().map_err(|_| anyhow!("line {line}: malformed argument {t:?}"))).collect::<Result<Vec<_>>>()?;
        if args.len() != arity {
            bail!("line {line}: {head} takes {arity} arguments, got {}", args.len());
        }
        out.push(QueryRecord { line, kind: q, args });
    }
    Ok(out)
}

fn pos(v: i64) -> Result<usize> {
    usize::try_from(v).map_err(|_| anyhow!("negative position {v}"))
}

fn substring(n: usize, i: i64, j: i64) -> Result<SubstringHandle> {
    let (i, j) = (pos(i)?, pos(j)?);
    if i == 0 || i > j || j > n {
        bail!("invalid substring [{i}, {j}] for text length {n}");
    }
    Ok(SubstringHandle::new(i, j))
}

fn show_runs(idx: &Index, runs: &BwtRuns) -> String {
    let parts: Vec<String> = runs.iter().map(|&(c, k)| format!("{}:{k}", c.map_or("$".to_string(), |c| idx.show(c)))).collect();
    parts.join(" ")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or("none".to_string(), |v| v.to_string())
}

pub fn answer(idx: &Index, q: &QueryRecord) -> Result<String> {
    let a = &q.args;
    Ok(match &idx.structure {
        Structure::Wavelet(t) => match q.kind {
            QueryKind::Access => idx.show(t.access(pos(a[0])?)?),
            QueryKind::Rank => match u64::try_from(a[0]) {
                Ok(c) => t.rank(c, pos(a[1])?)?.to_string(),
                Err(_) => 0.to_string(),
            },
            QueryKind::Select => opt(u64::try_from(a[0]).ok().and_then(|c| t.select(c, pos(a[1]).ok()?))),
            _ => unreachable!("arity check"),
        },
        Structure::Range(r) => match q.kind {
            QueryKind::Access => r.access(pos(a[0])?)?.to_string(),
            QueryKind::Rank => r.range_rank(pos(a[0])?, pos(a[1])?, a[2])?.to_string(),
            QueryKind::Select => r.range_select(pos(a[0])?, pos(a[1])?, pos(a[2])?)?.to_string(),
            QueryKind::Successor => opt(r.range_successor(pos(a[0])?, pos(a[1])?, a[2])?),
            _ => unreachable!("arity check"),
        },
        Structure::Wst(p) => suffix_answer(
            idx,
            q,
            &p.text,
            |x, y| p.index.substring_suffix_rank(&p.text, x, y),
            |x, k| p.index.substring_suffix_select(&p.text, x, k),
            |x| p.index.substring_bwt_rle(&p.text, x),
        )?,
        Structure::Scaled(p) => suffix_answer(
            idx,
            q,
            &p.text,
            |x, y| p.index.substring_suffix_rank(&p.text, x, y),
            |x, k| p.index.substring_suffix_select(&p.text, x, k),
            |x| p.index.substring_bwt_rle(&p.text, x),
        )?,
    })
}

fn suffix_answer(
    idx: &Index,
    q: &QueryRecord,
    text: &wavesuffix::TextIndex,
    rank: impl Fn(SubstringHandle, SubstringHandle) -> wavesuffix::Result<usize>,
    select: impl Fn(SubstringHandle, usize) -> wavesuffix::Result<SubstringHandle>,
    bwt: impl Fn(SubstringHandle) -> wavesuffix::Result<BwtRuns>,
) -> Result<String> {
    let (a, n) = (&q.args, text.len());
    Ok(match q.kind {
        QueryKind::Access => {
            let i = pos(a[0])?;
            if i == 0 || i > n {
                bail!("position {i} out of range 1..={n}");
            }
            idx.show(text.char_at(i).unwrap())
        }
        QueryKind::SsRank => rank(substring(n, a[0], a[1])?, substring(n, a[2], a[3])?)?.to_string(),
        QueryKind::SsSelect => {
            let s = select(substring(n, a[0], a[1])?, pos(a[2])?)?;
            format!("{} {}", s.start, s.end)
        }
        QueryKind::BwtRle => show_runs(idx, &bwt(substring(n, a[0], a[1])?)?),
        _ => unreachable!("arity check"),
    })
}

/// Parses and answers every query; output is produced only if all succeed.
pub fn run(idx: &Index, text: &str) -> Result<String> {
    let queries = parse(text, idx.meta.kind)?;
    let answers: Vec<Result<String>> = queries.par_iter().map(|q| answer(idx, q).map_err(|e| anyhow!("line {}: {e:#}", q.line))).collect();
    let mut out = String::new();
    for a in answers {
        out.push_str(&a?);
        out.push('\n');
    }
    Ok(out)
}
