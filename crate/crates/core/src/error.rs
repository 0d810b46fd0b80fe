use thiserror::Error;

/// Errors produced by index construction, queries and file I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("alphabet of {0} symbols does not fit the code space")]
    AlphabetOverflow(u128),
    #[error("position {pos} out of range 1..={len}")]
    OutOfRange { pos: usize, len: usize },
    #[error("block width {width} does not divide text length {len}")]
    NotDivisible { width: usize, len: usize },
    #[error("supersymbol code of width {0} overflows a machine word")]
    CodeOverflow(usize),
    #[error("symbol {symbol} occurs {count} times, cannot select occurrence {k}")]
    SelectOutOfRange { symbol: u64, k: usize, count: usize },
    #[error("positions {0} and {1} lie in different BWT runs")]
    DifferentRuns(usize, usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed structure: {0}")]
    Malformed(String),
    #[error("bad file format: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
