//! A text held only through its RLBWT, SA/ISA samples and τ-names, with the
//! symbol table needed to report original symbols.

use crate::bwt_builder::{self, BuildConfig, BuildReport};
use crate::default_tau;
use crate::error::{Error, Result};
use crate::plcp;
use crate::rlbwt::{IndexedRlbwt, Rlbwt};
use crate::sa_isa_support::{SaAccess, SaIsaSupport};
use crate::tau_index::TauNameIndex;
use crate::text_core::{PackedText, SymbolSource};

#[derive(Debug, Clone, Default)]
pub struct IndexConfig {
    /// SA/ISA sampling rate; defaults to [`default_tau`].
    pub tau1: Option<usize>,
    /// Length of the named substrings used by LCE; defaults to
    /// [`default_name_tau`].
    pub tau2: Option<usize>,
    pub build: BuildConfig,
}

/// `ceil(log2 n)^2`, further capped so that `r·τ²`, the cost of naming every
/// τ-run, stays within `8n`.
pub fn default_name_tau(n: usize, r: usize) -> usize {
    let budget = ((8.0 * n as f64 / r.max(1) as f64).sqrt() as usize).max(1);
    default_tau(n).min(budget)
}

#[derive(Debug, Clone)]
pub struct TextIndex {
    bwt: IndexedRlbwt,
    sa: SaIsaSupport,
    names: TauNameIndex,
    /// Original symbol of payload code `c` is `alphabet[c - 1]`.
    alphabet: Vec<u64>,
    source: SymbolSource,
}

impl TextIndex {
    /// Builds the RLBWT of `text` (payload plus one sentinel) and all supports.
    pub fn build(text: &PackedText, cfg: &IndexConfig) -> Result<(Self, BuildReport)> {
        let (bwt, report) = bwt_builder::build_bwt(text, &cfg.build)?;
        let alphabet = (1..=text.payload_sigma())
            .map(|c| text.original_symbol(c - 1 + text.sentinels() as u64).unwrap())
            .collect();
        Ok((Self::assemble(bwt, alphabet, text.source(), cfg)?, report))
    }

    /// Builds supports over an existing RLBWT whose codes are taken verbatim.
    pub fn from_rlbwt(bwt: Rlbwt, cfg: &IndexConfig) -> Result<Self> {
        let alphabet = (1..bwt.sigma()).collect();
        Self::assemble(bwt, alphabet, SymbolSource::Integers, cfg)
    }

    fn assemble(bwt: Rlbwt, alphabet: Vec<u64>, source: SymbolSource, cfg: &IndexConfig) -> Result<Self> {
        let n = bwt.len();
        let bwt = IndexedRlbwt::new(bwt);
        if bwt.count(0) != 1 {
            return Err(Error::Malformed("BWT must contain exactly one sentinel".into()));
        }
        let tau1 = cfg.tau1.unwrap_or_else(|| default_tau(n)).clamp(1, n);
        let tau2 = cfg
            .tau2
            .unwrap_or_else(|| default_name_tau(n, bwt.runs()))
            .clamp(1, n);
        let sa = SaIsaSupport::build(&bwt, tau1)?;
        let names = TauNameIndex::build(&bwt, tau2)?;
        Ok(TextIndex {
            bwt,
            sa,
            names,
            alphabet,
            source,
        })
    }

    /// Length including the sentinel.
    pub fn len(&self) -> usize {
        self.bwt.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bwt.is_empty()
    }

    pub fn runs(&self) -> usize {
        self.bwt.runs()
    }

    pub fn bwt(&self) -> &IndexedRlbwt {
        &self.bwt
    }

    pub fn sa_support(&self) -> &SaIsaSupport {
        &self.sa
    }

    pub fn names(&self) -> &TauNameIndex {
        &self.names
    }

    pub fn source(&self) -> SymbolSource {
        self.source
    }

    #[inline]
    pub fn isa(&self, j: usize) -> usize {
        self.sa.isa(&self.bwt, j)
    }

    pub fn try_isa(&self, j: usize) -> Result<usize> {
        self.sa.try_isa(&self.bwt, j)
    }

    pub fn try_sa(&self, i: usize) -> Result<usize> {
        self.sa.try_sa(&self.bwt, i)
    }

    /// Code of `T[j]` (0 for the sentinel).
    pub fn symbol_code(&self, j: usize) -> u64 {
        self.bwt.f_symbol(self.isa(j))
    }

    /// Original symbol of a payload code.
    pub fn original_symbol(&self, code: u64) -> Option<u64> {
        code.checked_sub(1).and_then(|c| self.alphabet.get(c as usize).copied())
    }

    /// Payload codes `T[1..n-1]`, recovered by one pass of LF.
    pub fn payload_codes(&self) -> Vec<u64> {
        let n = self.len();
        let mut out = vec![0u64; n - 1];
        let mut row = 1;
        for j in (1..n).rev() {
            out[j - 1] = self.bwt.get(row);
            row = self.bwt.lf(row);
        }
        out
    }

    /// Original symbols of the payload.
    pub fn decode_payload(&self) -> Vec<u64> {
        self.payload_codes()
            .into_iter()
            .map(|c| self.original_symbol(c).unwrap_or(c))
            .collect()
    }

    /// Longest common prefix of the suffixes at `j1` and `j2`.
    pub fn lce(&self, j1: usize, j2: usize) -> usize {
        plcp::lce(self, j1, j2)
    }

    pub fn try_lce(&self, j1: usize, j2: usize) -> Result<usize> {
        for j in [j1, j2] {
            if j == 0 || j > self.len() {
                return Err(Error::OutOfRange { pos: j, len: self.len() });
            }
        }
        Ok(self.lce(j1, j2))
    }
}

impl SaAccess for TextIndex {
    fn len(&self) -> usize {
        self.bwt.len()
    }

    #[inline]
    fn sa(&self, i: usize) -> usize {
        self.sa.sa(&self.bwt, i)
    }
}
