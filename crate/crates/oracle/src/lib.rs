//! Brute-force reference answers. Everything here favours obviousness over speed.

pub mod bits;
pub mod range;
pub mod strings;
pub mod wavelet;
pub mod wst;
