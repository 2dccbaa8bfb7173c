//! Input parsing and the on-disk index file.
//!
//! File layout, all integers little-endian:
//! `magic[8] version:u32 kind:u8 alphabet:u8 n:u64 sigma:u64 payload_len:u64 payload`,
//! where the payload is the bincode encoding of the structure.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use wavesuffix::wavelet::bits_for;
use wavesuffix::{PackedList, RangeIndex, ScaledIndex, TextIndex, WaveletSuffixTree, WaveletTree};

pub const MAGIC: &[u8; 8] = b"WAVSUFX\n";
pub const VERSION: u32 = 1;
const HEADER_LEN: usize = 8 + 4 + 1 + 1 + 8 + 8 + 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Wavelet,
    Range,
    Wst,
    Scaled,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Wavelet => "wavelet",
            Kind::Range => "range",
            Kind::Wst => "wst",
            Kind::Scaled => "scaled",
        }
    }

    fn tag(self) -> u8 {
        self as u8
    }

    fn from_tag(t: u8) -> Result<Self> {
        [Kind::Wavelet, Kind::Range, Kind::Wst, Kind::Scaled]
            .get(t as usize)
            .copied()
            .ok_or_else(|| anyhow!("unknown structure kind tag {t}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    /// Raw bytes, one symbol per byte.
    Text,
    /// Whitespace-separated decimal integers.
    Dec,
    /// Fixed-width little-endian unsigned integers.
    Bin,
}

pub fn parse_input(bytes: &[u8], format: InputFormat, width: usize) -> Result<Vec<i64>> {
    match format {
        InputFormat::Text => Ok(bytes.iter().map(|&b| b as i64).collect()),
        InputFormat::Dec => {
            let text = std::str::from_utf8(bytes).context("decimal input is not valid UTF-8")?;
            let mut out = Vec::new();
            for (ln, line) in text.lines().enumerate() {
                for tok in line.split_whitespace() {
                    out.push(tok.parse::<i64>().map_err(|e| anyhow!("line {}: malformed integer {tok:?}: {e}", ln + 1))?);
                }
            }
            Ok(out)
        }
        InputFormat::Bin => {
            if !bytes.len().is_multiple_of(width) {
                bail!("binary input of {} bytes is not a multiple of width {width}", bytes.len());
            }
            bytes
                .chunks(width)
                .enumerate()
                .map(|(i, c)| {
                    let mut w = [0u8; 8];
                    w[..width].copy_from_slice(c);
                    let v = u64::from_le_bytes(w);
                    i64::try_from(v).map_err(|_| anyhow!("integer {v} at index {i} exceeds the signed 64-bit range"))
                })
                .collect()
        }
    }
}

fn symbols(values: &[i64]) -> Result<Vec<u64>> {
    values.iter().enumerate().map(|(i, &v)| u64::try_from(v).map_err(|_| anyhow!("negative symbol {v} at index {i}"))).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Meta {
    pub kind: Kind,
    /// Symbols are bytes and print as characters.
    pub bytes: bool,
    pub n: usize,
    pub sigma: u64,
}

#[derive(Serialize, Deserialize)]
pub struct TextPayload<T> {
    pub text: TextIndex,
    pub index: T,
}

pub enum Structure {
    Wavelet(Box<WaveletTree>),
    Range(Box<RangeIndex>),
    Wst(Box<TextPayload<WaveletSuffixTree>>),
    Scaled(Box<TextPayload<ScaledIndex>>),
}

pub struct Index {
    pub meta: Meta,
    pub structure: Structure,
}

impl Index {
    pub fn build(kind: Kind, values: &[i64], bytes: bool, d: usize, tau: Option<u32>) -> Result<Self> {
        let n = values.len();
        let (structure, sigma) = match kind {
            Kind::Wavelet => {
                let s = symbols(values)?;
                let sigma = s.iter().max().map_or(1, |&m| m + 1);
                let packed = PackedList::pack(&s, bits_for(sigma).max(1))?;
                (Structure::Wavelet(Box::new(WaveletTree::build_binary(&packed, sigma, tau)?)), sigma)
            }
            Kind::Range => {
                let idx = RangeIndex::build(values, d, tau)?;
                let sigma = idx.distinct_values().len() as u64;
                (Structure::Range(Box::new(idx)), sigma)
            }
            Kind::Wst | Kind::Scaled => {
                if values.is_empty() {
                    bail!("a suffix index needs a non-empty text");
                }
                let text = TextIndex::build(&symbols(values)?)?;
                let sigma = text.sigma();
                let s = if kind == Kind::Wst {
                    Structure::Wst(Box::new(TextPayload { index: WaveletSuffixTree::build(&text)?, text }))
                } else {
                    Structure::Scaled(Box::new(TextPayload { index: ScaledIndex::build(&text)?, text }))
                };
                (s, sigma)
            }
        };
        Ok(Index { meta: Meta { kind, bytes, n, sigma }, structure })
    }

    pub fn len(&self) -> usize {
        self.meta.n
    }

    pub fn sigma(&self) -> u64 {
        self.meta.sigma
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let payload = match &self.structure {
            Structure::Wavelet(t) => bincode::serialize(t),
            Structure::Range(r) => bincode::serialize(r),
            Structure::Wst(p) => bincode::serialize(p),
            Structure::Scaled(p) => bincode::serialize(p),
        }?;
        let m = &self.meta;
        let mut out = Vec::with_capacity(HEADER_LEN + payload.len());
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&VERSION.to_le_bytes());
        out.push(m.kind.tag());
        out.push(m.bytes as u8);
        out.extend_from_slice(&(m.n as u64).to_le_bytes());
        out.extend_from_slice(&m.sigma.to_le_bytes());
        out.extend_from_slice(&(payload.len() as u64).to_le_bytes());
        out.extend_from_slice(&payload);
        Ok(out)
    }

    pub fn from_bytes(b: &[u8]) -> Result<Self> {
        if b.len() < HEADER_LEN || &b[..8] != MAGIC {
            bail!("not an index file");
        }
        let u64_at = |o: usize| u64::from_le_bytes(b[o..o + 8].try_into().unwrap());
        let version = u32::from_le_bytes(b[8..12].try_into().unwrap());
        if version != VERSION {
            bail!("index format version {version} is not supported (expected {VERSION})");
        }
        let kind = Kind::from_tag(b[12])?;
        let bytes = match b[13] {
            0 => false,
            1 => true,
            t => bail!("unknown alphabet tag {t}"),
        };
        let (n, sigma, len) = (u64_at(14) as usize, u64_at(22), u64_at(30) as usize);
        let payload = &b[HEADER_LEN..];
        if payload.len() != len {
            bail!("payload is {} bytes, header says {len}", payload.len());
        }
        let structure = match kind {
            Kind::Wavelet => {
                let mut t: Box<WaveletTree> = bincode::deserialize(payload)?;
                t.rebuild_lookup();
                Structure::Wavelet(t)
            }
            Kind::Range => Structure::Range(Box::new(bincode::deserialize(payload)?)),
            Kind::Wst => {
                let mut p: Box<TextPayload<WaveletSuffixTree>> = bincode::deserialize(payload)?;
                p.index.rebuild_lookup();
                Structure::Wst(p)
            }
            Kind::Scaled => {
                let mut p: Box<TextPayload<ScaledIndex>> = bincode::deserialize(payload)?;
                p.index.rebuild_lookup();
                Structure::Scaled(p)
            }
        };
        Ok(Index { meta: Meta { kind, bytes, n, sigma }, structure })
    }

    /// Writes the index and returns the number of bytes written.
    pub fn save(&self, path: &Path) -> Result<usize> {
        let b = self.to_bytes()?;
        std::fs::write(path, &b).with_context(|| format!("cannot write {}", path.display()))?;
        Ok(b.len())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let b = std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
        Self::from_bytes(&b).with_context(|| format!("cannot load {}", path.display()))
    }

    /// Printed form of a symbol.
    pub fn show(&self, c: u64) -> String {
        match u8::try_from(c) {
            Ok(b) if self.meta.bytes && b.is_ascii_graphic() => (b as char).to_string(),
            Ok(b) if self.meta.bytes => format!("\\x{b:02x}"),
            _ => c.to_string(),
        }
    }
}
