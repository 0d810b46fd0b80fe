//! Run-length compressed BWT with rank/select, LF/Ψ and backward search.
//!
//! Every query is answered by binary search over `r` runs.

use std::io::{Read, Write};

use crate::binio;
use crate::error::{Error, Result};

/// The BWT as `r` maximal runs `(start, symbol)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rlbwt {
    n: usize,
    sigma: u64,
    starts: Vec<usize>,
    syms: Vec<u64>,
}

/// Accumulates runs, merging adjacent runs with equal symbols.
#[derive(Debug, Default)]
pub struct RunBuilder {
    n: usize,
    starts: Vec<usize>,
    syms: Vec<u64>,
}

impl RunBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, sym: u64, len: usize) {
        if len == 0 {
            return;
        }
        if self.syms.last() != Some(&sym) {
            self.starts.push(self.n + 1);
            self.syms.push(sym);
        }
        self.n += len;
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn finish(self, sigma: u64) -> Rlbwt {
        Rlbwt {
            n: self.n,
            sigma,
            starts: self.starts,
            syms: self.syms,
        }
    }
}

impl Rlbwt {
    pub fn from_bwt(bwt: &[u64], sigma: u64) -> Result<Self> {
        if bwt.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut b = RunBuilder::new();
        for &c in bwt {
            b.push(c, 1);
        }
        Ok(b.finish(sigma))
    }

    pub fn decompress(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.n);
        for k in 0..self.runs() {
            out.extend(std::iter::repeat_n(self.syms[k], self.run_len(k)));
        }
        out
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn sigma(&self) -> u64 {
        self.sigma
    }

    /// Number of runs `r`.
    pub fn runs(&self) -> usize {
        self.starts.len()
    }

    pub fn run_starts(&self) -> &[usize] {
        &self.starts
    }

    pub fn run_symbols(&self) -> &[u64] {
        &self.syms
    }

    pub fn run_start(&self, k: usize) -> usize {
        self.starts[k]
    }

    /// Last position of run `k` (inclusive).
    pub fn run_end(&self, k: usize) -> usize {
        self.starts.get(k + 1).map_or(self.n, |&s| s - 1)
    }

    pub fn run_len(&self, k: usize) -> usize {
        self.run_end(k) + 1 - self.starts[k]
    }

    pub fn run_symbol(&self, k: usize) -> u64 {
        self.syms[k]
    }

    /// 0-based index of the run containing position `i`.
    #[inline]
    pub fn run_of(&self, i: usize) -> usize {
        debug_assert!(i >= 1 && i <= self.n);
        self.starts.partition_point(|&s| s <= i) - 1
    }

    pub fn is_run_start(&self, i: usize) -> bool {
        self.starts.binary_search(&i).is_ok()
    }

    #[inline]
    pub fn get(&self, i: usize) -> u64 {
        self.syms[self.run_of(i)]
    }

    pub fn access(&self, i: usize) -> Result<u64> {
        self.check(i)?;
        Ok(self.get(i))
    }

    fn check(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            Err(Error::OutOfRange { pos: i, len: self.n })
        } else {
            Ok(())
        }
    }

    /// Writes the `RLBW1` format.
    pub fn write_to<W: Write>(&self, w: &mut W) -> Result<()> {
        let sigma = u32::try_from(self.sigma)
            .map_err(|_| Error::Format(format!("alphabet {} too large for RLBW1", self.sigma)))?;
        w.write_all(b"RLBW1")?;
        binio::write_u64(w, self.n as u64)?;
        binio::write_u32(w, sigma)?;
        binio::write_u64(w, self.runs() as u64)?;
        for (&s, &c) in self.starts.iter().zip(&self.syms) {
            let c = u32::try_from(c).map_err(|_| Error::Format(format!("symbol {c} too large")))?;
            binio::write_u64(w, s as u64)?;
            binio::write_u32(w, c)?;
        }
        Ok(())
    }

    pub fn read_from<R: Read>(r: &mut R) -> Result<Self> {
        binio::expect_magic(r, b"RLBW1")?;
        let n = binio::read_usize(r)?;
        let sigma = binio::read_u32(r)? as u64;
        let runs = binio::read_usize(r)?;
        let mut starts = Vec::with_capacity(runs.min(1 << 24));
        let mut syms = Vec::with_capacity(runs.min(1 << 24));
        for _ in 0..runs {
            starts.push(binio::read_usize(r)?);
            syms.push(binio::read_u32(r)? as u64);
        }
        let out = Rlbwt { n, sigma, starts, syms };
        out.validate()?;
        Ok(out)
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 || self.starts.first() != Some(&1) {
            return Err(Error::Malformed("first run must start at 1".into()));
        }
        for k in 1..self.runs() {
            if self.starts[k] <= self.starts[k - 1] || self.starts[k] > self.n {
                return Err(Error::Malformed("run starts must increase within 1..=n".into()));
            }
            if self.syms[k] == self.syms[k - 1] {
                return Err(Error::Malformed("adjacent runs share a symbol".into()));
            }
        }
        if self.syms.iter().any(|&c| c >= self.sigma) {
            return Err(Error::Malformed("symbol outside alphabet".into()));
        }
        Ok(())
    }
}

/// Runs re-sorted by `(symbol, start)` with cumulative counts, plus the
/// C-array.
#[derive(Debug, Clone)]
pub struct RankSelectSupport {
    /// Distinct symbols in increasing order.
    symbols: Vec<u64>,
    /// `c[s]`: occurrences of symbols smaller than `symbols[s]`; `c[len]` is n.
    c: Vec<usize>,
    /// Runs of `symbols[s]` occupy `offsets[s]..offsets[s+1]` below.
    offsets: Vec<usize>,
    sorted_starts: Vec<usize>,
    sorted_lens: Vec<usize>,
    /// Occurrences of the run's symbol strictly before the run.
    sorted_cum: Vec<usize>,
    /// `lf_base[k] + (i - start_k) + 1 = LF(i)` for `i` in run `k`.
    lf_base: Vec<usize>,
}

impl RankSelectSupport {
    pub fn build(bwt: &Rlbwt) -> Self {
        let r = bwt.runs();
        let mut order: Vec<usize> = (0..r).collect();
        order.sort_unstable_by_key(|&k| (bwt.syms[k], bwt.starts[k]));
        let mut symbols = Vec::new();
        let mut offsets = Vec::new();
        let mut sorted_starts = Vec::with_capacity(r);
        let mut sorted_lens = Vec::with_capacity(r);
        let mut sorted_cum = Vec::with_capacity(r);
        let mut totals = Vec::new();
        let mut cum_of_run = vec![0usize; r];
        for (idx, &k) in order.iter().enumerate() {
            let c = bwt.syms[k];
            if symbols.last() != Some(&c) {
                symbols.push(c);
                offsets.push(idx);
                totals.push(0usize);
            }
            let t = totals.last_mut().unwrap();
            sorted_starts.push(bwt.starts[k]);
            sorted_lens.push(bwt.run_len(k));
            sorted_cum.push(*t);
            cum_of_run[k] = *t;
            *t += bwt.run_len(k);
        }
        offsets.push(r);
        let mut c = Vec::with_capacity(symbols.len() + 1);
        let mut acc = 0;
        for t in &totals {
            c.push(acc);
            acc += t;
        }
        c.push(acc);
        let lf_base = (0..r)
            .map(|k| {
                let s = symbols.binary_search(&bwt.syms[k]).unwrap();
                c[s] + cum_of_run[k]
            })
            .collect();
        RankSelectSupport {
            symbols,
            c,
            offsets,
            sorted_starts,
            sorted_lens,
            sorted_cum,
            lf_base,
        }
    }

    pub fn symbols(&self) -> &[u64] {
        &self.symbols
    }
}

/// An [`Rlbwt`] together with its [`RankSelectSupport`].
#[derive(Debug, Clone)]
pub struct IndexedRlbwt {
    bwt: Rlbwt,
    rs: RankSelectSupport,
}

impl IndexedRlbwt {
    pub fn new(bwt: Rlbwt) -> Self {
        let rs = RankSelectSupport::build(&bwt);
        IndexedRlbwt { bwt, rs }
    }

    pub fn bwt(&self) -> &Rlbwt {
        &self.bwt
    }

    pub fn into_bwt(self) -> Rlbwt {
        self.bwt
    }

    pub fn support(&self) -> &RankSelectSupport {
        &self.rs
    }

    pub fn len(&self) -> usize {
        self.bwt.n
    }

    pub fn is_empty(&self) -> bool {
        self.bwt.n == 0
    }

    pub fn runs(&self) -> usize {
        self.bwt.runs()
    }

    #[inline]
    pub fn get(&self, i: usize) -> u64 {
        self.bwt.get(i)
    }

    pub fn access(&self, i: usize) -> Result<u64> {
        self.bwt.access(i)
    }

    /// Number of BWT symbols smaller than `c`.
    pub fn c_of(&self, c: u64) -> usize {
        let s = self.rs.symbols.partition_point(|&x| x < c);
        self.rs.c[s]
    }

    /// Total occurrences of `c`.
    pub fn count(&self, c: u64) -> usize {
        match self.rs.symbols.binary_search(&c) {
            Ok(s) => self.rs.c[s + 1] - self.rs.c[s],
            Err(_) => 0,
        }
    }

    /// Occurrences of `c` in `BWT[1..i]`, for `i` in `0..=n`.
    pub fn rank(&self, c: u64, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        let i = i.min(self.bwt.n);
        let Ok(s) = self.rs.symbols.binary_search(&c) else {
            return 0;
        };
        let (lo, hi) = (self.rs.offsets[s], self.rs.offsets[s + 1]);
        let q = lo + self.rs.sorted_starts[lo..hi].partition_point(|&st| st <= i);
        if q == lo {
            return 0;
        }
        let q = q - 1;
        self.rs.sorted_cum[q] + self.rs.sorted_lens[q].min(i + 1 - self.rs.sorted_starts[q])
    }

    /// Position of the `k`-th occurrence of `c` (1-based `k`).
    pub fn select(&self, c: u64, k: usize) -> Result<usize> {
        let count = self.count(c);
        if k == 0 || k > count {
            return Err(Error::SelectOutOfRange { symbol: c, k, count });
        }
        let s = self.rs.symbols.binary_search(&c).unwrap();
        Ok(self.select_in(s, k))
    }

    #[inline]
    fn select_in(&self, s: usize, k: usize) -> usize {
        let (lo, hi) = (self.rs.offsets[s], self.rs.offsets[s + 1]);
        let q = lo + self.rs.sorted_cum[lo..hi].partition_point(|&cu| cu < k) - 1;
        self.rs.sorted_starts[q] + (k - self.rs.sorted_cum[q] - 1)
    }

    #[inline]
    pub fn lf(&self, i: usize) -> usize {
        let k = self.bwt.run_of(i);
        self.rs.lf_base[k] + (i - self.bwt.starts[k]) + 1
    }

    /// Symbol of row `i` in the first column.
    #[inline]
    pub fn f_symbol(&self, i: usize) -> u64 {
        self.rs.symbols[self.rs.c.partition_point(|&x| x < i) - 1]
    }

    #[inline]
    pub fn psi(&self, i: usize) -> usize {
        let s = self.rs.c.partition_point(|&x| x < i) - 1;
        self.select_in(s, i - self.rs.c[s])
    }

    pub fn try_lf(&self, i: usize) -> Result<usize> {
        self.bwt.check(i)?;
        Ok(self.lf(i))
    }

    pub fn try_psi(&self, i: usize) -> Result<usize> {
        self.bwt.check(i)?;
        Ok(self.psi(i))
    }

    /// Given the number `i` of suffixes smaller than `P`, returns the number of
    /// suffixes smaller than `cP`.
    #[inline]
    pub fn backward_search_step(&self, i: usize, c: u64) -> usize {
        self.c_of(c) + self.rank(c, i)
    }

    /// Backward search of `pattern` from state `start` (0 counts suffixes
    /// strictly smaller, `n` is the empty-pattern state).
    pub fn backward_search(&self, pattern: &[u64], start: usize) -> usize {
        pattern
            .iter()
            .rev()
            .fold(start, |i, &c| self.backward_search_step(i, c))
    }

    /// `LF(i)` from a known `LF(i_known)` in the same run.
    pub fn lf_step_within_run(&self, i: usize, i_known: usize, lf_known: usize) -> Result<usize> {
        self.bwt.check(i)?;
        self.bwt.check(i_known)?;
        if self.bwt.run_of(i) != self.bwt.run_of(i_known) {
            return Err(Error::DifferentRuns(i, i_known));
        }
        Ok((lf_known + i).wrapping_sub(i_known))
    }
}
