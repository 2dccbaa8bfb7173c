use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value {value} at index {index} does not fit in {width} bits")]
    ValueOutOfRange { index: usize, value: u64, width: u32 },
    #[error("width {0} is outside 1..64")]
    InvalidWidth(u32),
    #[error("width mismatch: {0} vs {1}")]
    WidthMismatch(u32, u32),
    #[error("bit position {t} out of range for width {width}")]
    BitOutOfRange { t: u32, width: u32 },
    #[error("symbol {symbol} at index {index} outside alphabet of size {sigma}")]
    SymbolOutOfRange { index: usize, symbol: u64, sigma: u64 },
    #[error("position {pos} out of range 1..={len}")]
    PositionOutOfRange { pos: usize, len: usize },
    #[error("invalid range [{i}, {j}] for length {len}")]
    InvalidRange { i: usize, j: usize, len: usize },
    #[error("ordinal {k} out of range 1..={count}")]
    OrdinalOutOfRange { k: usize, count: usize },
    #[error("degree {0} is not a power of two >= 2")]
    InvalidDegree(usize),
    #[error("invalid tree shape: {0}")]
    InvalidShape(String),
    #[error("tree height {height} exceeds bound {bound}")]
    HeightExceeded { height: usize, bound: usize },
    #[error("invalid substring [{start}, {end}] for text length {len}")]
    InvalidSubstring { start: usize, end: usize, len: usize },
    #[error("pattern must be non-empty")]
    EmptyPattern,
    #[error("text length {text} is not below {ratio} x (pattern length {pattern} + 1)")]
    RatioExceeded { text: usize, pattern: usize, ratio: usize },
    #[error("structure invariant violated: {0}")]
    Invariant(String),
}
