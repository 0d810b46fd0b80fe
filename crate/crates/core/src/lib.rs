//! Run-length compressed text indexes for highly repetitive strings.
//!
//! The crate builds the run-length compressed BWT of a text directly from its
//! packed representation and derives from it random access to the suffix
//! array and its inverse, the permuted LCP array, a run-length compressed
//! suffix array, the LZ77 parsing and the Lyndon factorization.
//!
//! Positions in the public API are 1-based: lexicographic ranks `i` and text
//! positions `j` both range over `1..=n`, where `n` counts the trailing
//! sentinel.

pub mod binio;
pub mod bitvec;
pub mod bwt_builder;
pub mod corpus;
pub mod error;
pub mod index;
pub mod lyndon;
pub mod lz77;
pub mod min_tree;
pub mod oracle;
pub mod plcp;
pub mod rlbwt;
pub mod rlcsa;
pub mod sa_isa_support;
pub mod sais;
pub mod tau_index;
pub mod text_core;
pub mod textbook;

pub use error::{Error, Result};
pub use index::{IndexConfig, TextIndex};
pub use rlbwt::{IndexedRlbwt, Rlbwt};
pub use text_core::{PackedText, SuperText};

/// `ceil(log2 n)^2`, clamped to `[1, n]`. Used as the default for every
/// sampling or block-size parameter that grows polylogarithmically.
pub fn default_tau(n: usize) -> usize {
    let lg = ceil_log2(n).max(1);
    (lg * lg).clamp(1, n.max(1))
}

/// `ceil(log2 n)` with `ceil_log2(0) = ceil_log2(1) = 0`.
pub fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_helpers() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(7), 3);
        assert_eq!(ceil_log2(8), 3);
        assert_eq!(ceil_log2(9), 4);
        assert_eq!(default_tau(7), 7);
        assert_eq!(default_tau(1000), 100);
        assert_eq!(default_tau(1), 1);
    }
}
