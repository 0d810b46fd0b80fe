//! Input handling: alphabet remapping, sentinel padding, bit-packed storage
//! and regrouping into supersymbols.
//!
//! Codes `0..p` are reserved for the `p` trailing sentinels; payload symbols
//! are mapped, in sorted order, onto `p..sigma`. All positions in this module
//! are 1-based.

use crate::error::{Error, Result};

/// Largest alphabet (sentinels included) a [`PackedText`] accepts.
pub const MAX_SIGMA: u64 = u32::MAX as u64;

/// Where the payload symbols came from; only affects how symbols are printed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolSource {
    Bytes,
    Integers,
}

/// A text over an integer alphabet with `p` sentinels appended, stored with a
/// fixed number of bits per symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackedText {
    n: usize,
    sigma: u64,
    width: u32,
    sentinels: usize,
    words: Vec<u64>,
    /// `symbols[c - p]` is the original symbol behind payload code `c`.
    symbols: Vec<u64>,
    source: SymbolSource,
}

fn bits_for(sigma: u64) -> u32 {
    if sigma <= 1 {
        1
    } else {
        64 - (sigma - 1).leading_zeros()
    }
}

impl PackedText {
    /// Remaps `input` onto dense codes and appends `sentinels` sentinels.
    pub fn from_symbols(input: &[u64], sentinels: usize) -> Result<Self> {
        Self::build(input, sentinels, SymbolSource::Integers)
    }

    pub fn from_bytes(input: &[u8], sentinels: usize) -> Result<Self> {
        let symbols: Vec<u64> = input.iter().map(|&b| b as u64).collect();
        Self::build(&symbols, sentinels, SymbolSource::Bytes)
    }

    fn build(input: &[u64], sentinels: usize, source: SymbolSource) -> Result<Self> {
        if input.is_empty() {
            return Err(Error::EmptyInput);
        }
        if sentinels == 0 {
            return Err(Error::InvalidParameter("at least one sentinel is required".into()));
        }
        let mut symbols = input.to_vec();
        symbols.sort_unstable();
        symbols.dedup();
        let sigma = symbols.len() as u128 + sentinels as u128;
        if sigma > MAX_SIGMA as u128 {
            return Err(Error::AlphabetOverflow(sigma));
        }
        let p = sentinels as u64;
        let mut codes = Vec::with_capacity(input.len() + sentinels);
        codes.extend(
            input
                .iter()
                .map(|s| symbols.binary_search(s).expect("symbol present") as u64 + p),
        );
        codes.extend(0..p);
        Ok(Self::pack(&codes, sigma as u64, sentinels, symbols, source))
    }

    fn pack(codes: &[u64], sigma: u64, sentinels: usize, symbols: Vec<u64>, source: SymbolSource) -> Self {
        let width = bits_for(sigma);
        let total_bits = codes.len() * width as usize;
        let mut words = vec![0u64; total_bits.div_ceil(64) + 1];
        for (idx, &c) in codes.iter().enumerate() {
            let bit = idx * width as usize;
            let (w, off) = (bit / 64, bit % 64);
            words[w] |= c << off;
            if off + width as usize > 64 {
                words[w + 1] |= c >> (64 - off);
            }
        }
        PackedText {
            n: codes.len(),
            sigma,
            width,
            sentinels,
            words,
            symbols,
            source,
        }
    }

    /// Length including the sentinel block.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Number of distinct codes, sentinels included.
    pub fn sigma(&self) -> u64 {
        self.sigma
    }

    pub fn bits_per_symbol(&self) -> u32 {
        self.width
    }

    pub fn sentinels(&self) -> usize {
        self.sentinels
    }

    pub fn source(&self) -> SymbolSource {
        self.source
    }

    /// Length of the payload (text without sentinels).
    pub fn payload_len(&self) -> usize {
        self.n - self.sentinels
    }

    /// Code at 1-based position `j`.
    pub fn access(&self, j: usize) -> Result<u64> {
        if j == 0 || j > self.n {
            return Err(Error::OutOfRange { pos: j, len: self.n });
        }
        Ok(self.get(j))
    }

    /// Unchecked variant of [`access`](Self::access).
    #[inline]
    pub fn get(&self, j: usize) -> u64 {
        debug_assert!(j >= 1 && j <= self.n);
        let bit = (j - 1) * self.width as usize;
        let (w, off) = (bit / 64, bit % 64);
        let mut v = self.words[w] >> off;
        if off + self.width as usize > 64 {
            v |= self.words[w + 1] << (64 - off);
        }
        if self.width == 64 {
            v
        } else {
            v & ((1u64 << self.width) - 1)
        }
    }

    /// All codes, sentinels included.
    pub fn codes(&self) -> Vec<u64> {
        (1..=self.n).map(|j| self.get(j)).collect()
    }

    /// Original symbols of the payload.
    pub fn decode_payload(&self) -> Vec<u64> {
        (1..=self.payload_len())
            .map(|j| self.symbols[(self.get(j) - self.sentinels as u64) as usize])
            .collect()
    }

    /// Original symbol for a payload code; `None` for sentinel codes.
    pub fn original_symbol(&self, code: u64) -> Option<u64> {
        let p = self.sentinels as u64;
        if code < p {
            return None;
        }
        self.symbols.get((code - p) as usize).copied()
    }

    /// Payload code of an original symbol, if it occurs in the text.
    pub fn code_of(&self, symbol: u64) -> Option<u64> {
        self.symbols
            .binary_search(&symbol)
            .ok()
            .map(|i| i as u64 + self.sentinels as u64)
    }

    /// Number of distinct payload symbols.
    pub fn payload_sigma(&self) -> u64 {
        self.symbols.len() as u64
    }

    /// Same payload re-coded with a different number of trailing sentinels.
    pub fn with_sentinels(&self, sentinels: usize) -> Result<Self> {
        if sentinels == 0 {
            return Err(Error::InvalidParameter("at least one sentinel is required".into()));
        }
        let sigma = self.symbols.len() as u128 + sentinels as u128;
        if sigma > MAX_SIGMA as u128 {
            return Err(Error::AlphabetOverflow(sigma));
        }
        let old = self.sentinels as u64;
        let new = sentinels as u64;
        let mut codes: Vec<u64> = (1..=self.payload_len()).map(|j| self.get(j) - old + new).collect();
        codes.extend(0..new);
        Ok(Self::pack(&codes, sigma as u64, sentinels, self.symbols.clone(), self.source))
    }

    /// Groups every `width` consecutive symbols into one supersymbol.
    pub fn regroup(&self, width: usize) -> Result<SuperText> {
        if width == 0 || !self.n.is_multiple_of(width) {
            return Err(Error::NotDivisible { width, len: self.n });
        }
        if width as u64 * self.width as u64 > 64 {
            return Err(Error::CodeOverflow(width));
        }
        let alphabet = (self.sigma as u128).checked_pow(width as u32).ok_or(Error::CodeOverflow(width))?;
        if alphabet > u64::MAX as u128 + 1 {
            return Err(Error::CodeOverflow(width));
        }
        let base = self.sigma;
        let codes = (0..self.n / width)
            .map(|blk| {
                (1..=width).fold(0u64, |acc, t| acc * base + self.get(blk * width + t))
            })
            .collect();
        Ok(SuperText {
            width,
            base,
            alphabet,
            codes,
        })
    }
}

/// A text reinterpreted over blocks of `width` symbols. Supersymbol codes are
/// base-`sigma` numbers, most significant symbol first, so numeric order of
/// codes equals lexicographic order of blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperText {
    width: usize,
    base: u64,
    alphabet: u128,
    codes: Vec<u64>,
}

impl SuperText {
    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// Symbols per supersymbol.
    pub fn width(&self) -> usize {
        self.width
    }

    /// Alphabet size of the original text.
    pub fn base(&self) -> u64 {
        self.base
    }

    /// `base^width`, the size of the superalphabet.
    pub fn alphabet_size(&self) -> u128 {
        self.alphabet
    }

    /// Supercode at 1-based position `j`.
    pub fn get(&self, j: usize) -> u64 {
        self.codes[j - 1]
    }

    pub fn codes(&self) -> &[u64] {
        &self.codes
    }

    pub fn encode(&self, block: &[u64]) -> u64 {
        block.iter().fold(0u64, |acc, &c| acc * self.base + c)
    }

    pub fn decode(&self, mut code: u64) -> Vec<u64> {
        let mut out = vec![0; self.width];
        for slot in out.iter_mut().rev() {
            *slot = code % self.base;
            code /= self.base;
        }
        out
    }
}

/// Parses the integer-sequence format: optional `#` comment lines, a header
/// line `n sigma`, then `n` lines holding one decimal code each.
pub fn parse_int_sequence(content: &str) -> Result<Vec<u64>> {
    let mut lines = content
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::Format("missing header".into()))?;
    let mut parts = header.split_whitespace();
    let parse = |s: Option<&str>, what: &str| -> Result<u64> {
        s.ok_or_else(|| Error::Format(format!("missing {what}")))?
            .parse::<u64>()
            .map_err(|e| Error::Format(format!("bad {what}: {e}")))
    };
    let n = parse(parts.next(), "length")? as usize;
    let sigma = parse(parts.next(), "alphabet size")?;
    if parts.next().is_some() {
        return Err(Error::Format("header must be `n sigma`".into()));
    }
    let mut out = Vec::with_capacity(n);
    for line in lines {
        let code: u64 = line
            .parse()
            .map_err(|e| Error::Format(format!("bad code {line:?}: {e}")))?;
        if code >= sigma {
            return Err(Error::Format(format!("code {code} not below sigma {sigma}")));
        }
        out.push(code);
    }
    if out.len() != n {
        return Err(Error::Format(format!("header promises {n} codes, found {}", out.len())));
    }
    Ok(out)
}

/// Inverse of [`parse_int_sequence`]; each comment is emitted as a `# ` line.
pub fn format_int_sequence(codes: &[u64], sigma: u64, comments: &[String]) -> String {
    let mut out = String::with_capacity(codes.len() * 4 + 32);
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    out.push_str(&format!("{} {}\n", codes.len(), sigma));
    for c in codes {
        out.push_str(&c.to_string());
        out.push('\n');
    }
    out
}
