//! NSV/PSV over the suffix array in blocks, and the greedy LZ77 parsing
//! driven by it.

use std::io::{Read, Write};

use crate::binio;
use crate::error::{Error, Result};
use crate::index::TextIndex;
use crate::min_tree::MinTree;
use crate::rlcsa::ShortcutEngine;
use crate::sa_isa_support::SaAccess;
use crate::text_core::SymbolSource;

/// SA values around every run start, over merged row intervals.
#[derive(Debug, Clone)]
pub(crate) struct Neighbourhoods {
    /// `(first row, offset into values)`, sorted by row.
    spans: Vec<(usize, usize)>,
    ends: Vec<usize>,
    values: Vec<u64>,
}

impl Neighbourhoods {
    /// Rows within `reach - 1` of a run start, or every row when `all`.
    pub(crate) fn build(starts: &[usize], n: usize, reach: usize, all: bool, mut fetch: impl FnMut(usize, usize) -> Vec<u64>) -> Self {
        let mut spans = Vec::new();
        let mut ends = Vec::new();
        let mut values = Vec::new();
        let mut push = |lo: usize, hi: usize| {
            spans.push((lo, values.len()));
            ends.push(hi);
            values.extend(fetch(lo, hi - lo + 1));
        };
        if all {
            push(1, n);
        } else {
            let mut cur: Option<(usize, usize)> = None;
            for &b in starts {
                let lo = b.saturating_sub(reach - 1).max(1);
                let hi = (b + reach - 1).min(n);
                cur = match cur {
                    Some((l, h)) if lo <= h + 1 => Some((l, h.max(hi))),
                    Some((l, h)) => {
                        push(l, h);
                        Some((lo, hi))
                    }
                    None => Some((lo, hi)),
                };
            }
            if let Some((l, h)) = cur {
                push(l, h);
            }
        }
        Neighbourhoods { spans, ends, values }
    }

    /// Stored values of rows `x..x+len-1`, which must lie in one interval.
    pub(crate) fn slice(&self, x: usize, len: usize) -> &[u64] {
        let k = self.spans.partition_point(|s| s.0 <= x) - 1;
        debug_assert!(x + len - 1 <= self.ends[k]);
        let off = self.spans[k].1 + (x - self.spans[k].0);
        &self.values[off..off + len]
    }

    pub(crate) fn stored_words(&self) -> usize {
        self.values.len() + 3 * self.spans.len()
    }
}

#[derive(Debug, Clone, Copy)]
struct Block {
    /// LF-distance to the image rows (0 for blocks holding a run start).
    d: u64,
    image: usize,
}

#[derive(Debug, Clone)]
pub struct NsvPsvSupport {
    n: usize,
    tau: usize,
    blocks: Vec<Block>,
    minima: Vec<(u64, usize)>,
    tree: MinTree,
    store: Neighbourhoods,
}

impl NsvPsvSupport {
    /// Blocks `[(j-1)τ+1..jτ]`. Only rows within τ of a run start are read
    /// through `sa`; a block without a run start is the image of its
    /// LF-shortcut shifted by the distance. `dense` reads every row instead.
    pub fn build<S: SaAccess>(idx: &TextIndex, sa: &S, engine: &ShortcutEngine, tau: usize, dense: bool) -> Result<Self> {
        if tau == 0 {
            return Err(Error::InvalidParameter("block size must be at least 1".into()));
        }
        let n = idx.len();
        let tau = tau.min(n);
        let runs = idx.bwt().bwt();
        let store = Neighbourhoods::build(runs.run_starts(), n, tau, dense, |p, len| {
            sa.sa_range(p, len).into_iter().map(|v| v as u64).collect()
        });
        let count = n.div_ceil(tau);
        let mut blocks = Vec::with_capacity(count);
        let mut minima = Vec::with_capacity(count);
        for k in 0..count {
            let s = k * tau + 1;
            let t = (s + tau - 1).min(n);
            let block = if dense || runs.run_start(runs.run_of(t)) >= s {
                Block { d: 0, image: s }
            } else {
                let (d, x) = engine.shortcut(idx, s, t)?;
                Block { d: d as u64, image: x }
            };
            let vals = store.slice(block.image, t - s + 1);
            let (off, v) = vals
                .iter()
                .enumerate()
                .min_by_key(|&(_, &v)| v)
                .map(|(o, &v)| (o, v))
                .unwrap();
            blocks.push(block);
            minima.push((v + block.d, s + off));
        }
        let tree = MinTree::new(&minima.iter().map(|m| m.0).collect::<Vec<_>>());
        Ok(NsvPsvSupport {
            n,
            tau,
            blocks,
            minima,
            tree,
            store,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    /// `(minimum SA value, row attaining it)` for each block.
    pub fn block_minima(&self) -> &[(u64, usize)] {
        &self.minima
    }

    pub fn stored_words(&self) -> usize {
        self.store.stored_words() + 4 * self.blocks.len()
    }

    fn block_values(&self, k: usize) -> impl Iterator<Item = u64> + '_ {
        let s = k * self.tau + 1;
        let t = (s + self.tau - 1).min(self.n);
        let b = self.blocks[k];
        self.store.slice(b.image, t - s + 1).iter().map(move |&v| v + b.d)
    }

    /// `SA[i]` from the block store.
    pub fn sa_at(&self, i: usize) -> u64 {
        let k = (i - 1) / self.tau;
        self.block_values(k).nth(i - 1 - k * self.tau).unwrap()
    }

    fn check(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            Err(Error::OutOfRange { pos: i, len: self.n })
        } else {
            Ok(())
        }
    }

    /// Least `j > i` with `SA[j] < SA[i]`, or 0.
    pub fn nsv(&self, i: usize) -> Result<usize> {
        self.check(i)?;
        let v = self.sa_at(i);
        let k = (i - 1) / self.tau;
        let base = k * self.tau + 1;
        let found = self
            .block_values(k)
            .enumerate()
            .skip(i - base + 1)
            .find(|&(_, x)| x < v)
            .map(|(o, _)| base + o);
        if let Some(j) = found {
            return Ok(j);
        }
        Ok(match self.tree.first_below(k + 1, v) {
            Some(kb) => {
                let base = kb * self.tau + 1;
                base + self.block_values(kb).position(|x| x < v).unwrap()
            }
            None => 0,
        })
    }

    /// Greatest `j < i` with `SA[j] < SA[i]`, or 0.
    pub fn psv(&self, i: usize) -> Result<usize> {
        self.check(i)?;
        let v = self.sa_at(i);
        let k = (i - 1) / self.tau;
        let base = k * self.tau + 1;
        let vals: Vec<u64> = self.block_values(k).take(i - base).collect();
        if let Some(o) = vals.iter().rposition(|&x| x < v) {
            return Ok(base + o);
        }
        if k == 0 {
            return Ok(0);
        }
        Ok(match self.tree.last_below(k - 1, v) {
            Some(kb) => {
                let base = kb * self.tau + 1;
                let vals: Vec<u64> = self.block_values(kb).collect();
                base + vals.iter().rposition(|&x| x < v).unwrap()
            }
            None => 0,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phrase {
    /// An original symbol with no earlier occurrence.
    Literal(u64),
    /// `len` symbols copied from 1-based text position `source`.
    Copy { source: usize, len: usize },
}

impl Phrase {
    pub fn len(&self) -> usize {
        match *self {
            Phrase::Literal(_) => 1,
            Phrase::Copy { len, .. } => len,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lz77Parsing {
    pub phrases: Vec<Phrase>,
    /// Decoded length (the text without its sentinel).
    pub len: usize,
    pub source: SymbolSource,
}

impl Lz77Parsing {
    pub fn z(&self) -> usize {
        self.phrases.len()
    }

    /// Rebuilds the text; sources may overlap the phrase they feed.
    pub fn decode(&self) -> Result<Vec<u64>> {
        let mut out: Vec<u64> = Vec::with_capacity(self.len);
        for ph in &self.phrases {
            match *ph {
                Phrase::Literal(c) => out.push(c),
                Phrase::Copy { source, len } => {
                    if source == 0 || source > out.len() {
                        return Err(Error::Malformed(format!(
                            "copy source {source} not before phrase start {}",
                            out.len() + 1
                        )));
                    }
                    for q in 0..len {
                        out.push(out[source - 1 + q]);
                    }
                }
            }
        }
        if out.len() != self.len {
            return Err(Error::Malformed(format!("decoded {} symbols, expected {}", out.len(), self.len)));
        }
        Ok(out)
    }

    /// One phrase per line: `L <symbol>` or `C <pos> <len>`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for ph in &self.phrases {
            match *ph {
                Phrase::Literal(c) => {
                    out.push_str("L ");
                    out.push_str(&format_symbol(c, self.source));
                }
                Phrase::Copy { source, len } => out.push_str(&format!("C {source} {len}")),
            }
            out.push('\n');
        }
        out
    }

    /// `LZ77`, u64 z, then per phrase a u8 tag (0 literal, 1 copy) and two
    /// u64 fields (`symbol, 1` or `source, len`).
    pub fn write_binary<W: Write>(&self, w: &mut W) -> Result<()> {
        w.write_all(b"LZ77")?;
        binio::write_u64(w, self.phrases.len() as u64)?;
        for ph in &self.phrases {
            let (tag, a, b) = match *ph {
                Phrase::Literal(c) => (0u8, c, 1),
                Phrase::Copy { source, len } => (1, source as u64, len as u64),
            };
            w.write_all(&[tag])?;
            binio::write_u64(w, a)?;
            binio::write_u64(w, b)?;
        }
        Ok(())
    }

    pub fn read_binary<R: Read>(r: &mut R, source: SymbolSource) -> Result<Self> {
        binio::expect_magic(r, b"LZ77")?;
        let z = binio::read_usize(r)?;
        let mut phrases = Vec::with_capacity(z.min(1 << 20));
        let mut len = 0;
        for _ in 0..z {
            let mut tag = [0u8];
            r.read_exact(&mut tag)?;
            let a = binio::read_u64(r)?;
            let b = binio::read_usize(r)?;
            phrases.push(match tag[0] {
                0 => Phrase::Literal(a),
                1 => Phrase::Copy { source: a as usize, len: b },
                t => return Err(Error::Format(format!("unknown phrase tag {t}"))),
            });
            len += phrases.last().unwrap().len();
        }
        Ok(Lz77Parsing { phrases, len, source })
    }
}

/// Printable form of an original symbol.
pub fn format_symbol(c: u64, source: SymbolSource) -> String {
    match source {
        SymbolSource::Bytes if (0x21..0x7f).contains(&c) => (c as u8 as char).to_string(),
        SymbolSource::Bytes => format!("\\x{c:02x}"),
        SymbolSource::Integers => c.to_string(),
    }
}

/// Greedy parsing of the text without its sentinel. At each phrase start
/// `j` the longest previous factor is found at the PSV or NSV of `ISA[j]`;
/// ties go to the PSV.
pub fn parse(idx: &TextIndex, nsv_psv: &NsvPsvSupport) -> Result<Lz77Parsing> {
    let n = idx.len();
    let mut phrases = Vec::new();
    let mut j = 1;
    while j < n {
        let i = idx.isa(j);
        let cand = |row: usize| -> (usize, usize) {
            if row == 0 {
                (0, 0)
            } else {
                let p = nsv_psv.sa_at(row) as usize;
                (p, idx.lce(p, j))
            }
        };
        let (pp, lp) = cand(nsv_psv.psv(i)?);
        let (pn, ln) = cand(nsv_psv.nsv(i)?);
        let (src, len) = if lp >= ln { (pp, lp) } else { (pn, ln) };
        if len == 0 {
            let code = idx.symbol_code(j);
            phrases.push(Phrase::Literal(idx.original_symbol(code).unwrap_or(code)));
            j += 1;
        } else {
            phrases.push(Phrase::Copy { source: src, len });
            j += len;
        }
    }
    Ok(Lz77Parsing {
        phrases,
        len: n - 1,
        source: idx.source(),
    })
}
