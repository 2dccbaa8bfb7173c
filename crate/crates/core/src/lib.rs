//! Succinct wavelet structures: packed bit-lists, wavelet trees of arbitrary
//! shape and degree, range rank/select/successor, and wavelet suffix trees for
//! substring suffix rank/select and substring BWT queries.

pub mod bitpack;
pub mod error;
pub mod range;
pub mod rmq;
pub mod stringology;
pub mod wavelet;
pub mod wst;

pub use bitpack::{BitVector, PackedList, RankSelect};
pub use error::{Error, Result};
pub use range::RangeIndex;
pub use stringology::{PeriodicProgression, StringInterval, SubstringHandle, TextIndex};
pub use wavelet::{DigitTree, GeneralizedRankSelect, TreeShape, WaveletTree};
pub use wst::{EdgeSuffixList, ScaledIndex, Side, WaveletSuffixTree};
