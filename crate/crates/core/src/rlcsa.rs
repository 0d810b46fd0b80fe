//! Run-length compressed suffix array: leveled LF-shortcuts around BWT run
//! boundaries, with explicit SA segments at the bottom level.
//!
//! For a block of rows `[s..t]` the LF-distance `d` is the least number of
//! LF-steps after which some row of the block lands on a run start; since no
//! row meets a run start earlier, `LF^d` maps the block onto a contiguous
//! interval starting at the shortcut `LF^d[s]`, and `SA[i] = SA[LF^d[i]] + d`.

use std::io::{Read, Write};

use crate::binio;
use crate::error::{Error, Result};
use crate::index::TextIndex;
use crate::min_tree::MinTree;
use crate::sa_isa_support::SaAccess;

/// Computes LF-distances and shortcuts of arbitrary row intervals from
/// samples `(ISA[q + tτ], tτ)` placed between consecutive irreducible text
/// positions `q`.
#[derive(Debug, Clone)]
pub struct ShortcutEngine {
    tau: usize,
    keys: Vec<usize>,
    /// Row of the run start reached after `values[k]` LF-steps from `keys[k]`.
    targets: Vec<usize>,
    rmq: MinTree,
}

impl ShortcutEngine {
    pub fn build(idx: &TextIndex, tau: usize) -> Result<Self> {
        if tau == 0 {
            return Err(Error::InvalidParameter("tau must be at least 1".into()));
        }
        let n = idx.len();
        let mut q: Vec<(usize, usize)> = idx
            .bwt()
            .bwt()
            .run_starts()
            .iter()
            .map(|&b| (idx.sa(b), b))
            .collect();
        q.sort_unstable();
        let mut pairs: Vec<(usize, u64, usize)> = Vec::with_capacity(n / tau + 1);
        for k in 0..q.len() {
            let (pos, row) = q[k];
            let next = q.get(k + 1).map_or(n + 1, |x| x.0);
            let mut off = tau;
            while pos + off < next {
                pairs.push((idx.isa(pos + off), off as u64, row));
                off += tau;
            }
        }
        pairs.sort_unstable();
        let values: Vec<u64> = pairs.iter().map(|p| p.1).collect();
        Ok(ShortcutEngine {
            tau,
            keys: pairs.iter().map(|p| p.0).collect(),
            targets: pairs.iter().map(|p| p.2).collect(),
            rmq: MinTree::new(&values),
        })
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn samples(&self) -> usize {
        self.keys.len()
    }

    /// `(d, LF^d[s])` for the block `[s..t]`.
    pub fn shortcut(&self, idx: &TextIndex, s: usize, t: usize) -> Result<(usize, usize)> {
        let bwt = idx.bwt();
        let runs = bwt.bwt();
        let width = t - s;
        let mut x = s;
        let mut best: Option<(usize, usize)> = None;
        for e in 0..self.tau {
            if best.is_some_and(|b| b.0 <= e) {
                break;
            }
            let y = x + width;
            if runs.run_start(runs.run_of(y)) >= x {
                best = Some(best.map_or((e, x), |b| b.min((e, x))));
                break;
            }
            let lo = self.keys.partition_point(|&k| k < x);
            let hi = self.keys.partition_point(|&k| k <= y);
            // a candidate overshooting the true distance may point below row 1; it loses anyway
            if let Some((m, v)) = self.rmq.min_in(lo, hi) {
                if let Some(target) = self.targets[m].checked_sub(self.keys[m] - x) {
                    let cand = (e + v as usize, target);
                    best = Some(best.map_or(cand, |b| b.min(cand)));
                }
            }
            x = bwt.lf(x);
        }
        best.ok_or_else(|| Error::Malformed(format!("no LF-distance found for rows {s}..{t}")))
    }
}

const MISSING: u64 = u64::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Shortcut {
    d: u64,
    target: u64,
}

impl Shortcut {
    const EMPTY: Shortcut = Shortcut { d: MISSING, target: 0 };
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Level {
    half: usize,
    /// `4τ - 1` blocks per run.
    blocks: Vec<Shortcut>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rlcsa {
    n: usize,
    sigma: u64,
    tau: usize,
    alpha: usize,
    top: usize,
    starts: Vec<usize>,
    levels: Vec<Level>,
    lt: Vec<Shortcut>,
    /// `SA[b-α..b+α]` for every run start `b`; `MISSING` outside `1..=n`.
    segments: Vec<u64>,
}

fn pow_sat(base: usize, e: usize) -> u128 {
    (base as u128).checked_pow(e as u32).unwrap_or(u128::MAX)
}

impl Rlcsa {
    pub fn build(idx: &TextIndex, engine: &ShortcutEngine, tau: usize) -> Result<Self> {
        if tau < 2 {
            return Err(Error::InvalidParameter("RLCSA fan-out must be at least 2".into()));
        }
        let n = idx.len();
        let bwt = idx.bwt().bwt();
        let r = bwt.runs();
        let starts = bwt.run_starts().to_vec();
        let top = n.div_ceil(r);
        let mut a = 0usize;
        while pow_sat(tau, a).saturating_mul(r as u128) < n as u128 {
            a += 1;
        }
        let alpha = a.max(1);

        let make = |s: usize, t: usize| -> Result<Shortcut> {
            let (d, target) = engine.shortcut(idx, s, t)?;
            Ok(Shortcut {
                d: d as u64,
                target: target as u64,
            })
        };
        let lt = (0..n.div_ceil(top))
            .map(|blk| {
                let s = blk * top + 1;
                make(s, (s + top - 1).min(n))
            })
            .collect::<Result<Vec<_>>>()?;

        let per_run = 4 * tau - 1;
        let mut levels = Vec::new();
        let mut prev = top;
        let mut k = 1;
        while prev > alpha {
            let bk = (n as u128).div_ceil((r as u128).saturating_mul(pow_sat(tau, k))) as usize;
            let half = bk.div_ceil(2).max(1);
            let mut blocks = Vec::with_capacity(r * per_run);
            for &b in &starts {
                for j in -(2 * tau as i64)..=(2 * tau as i64 - 2) {
                    let lo = b as i64 + j * half as i64;
                    let hi = lo + 2 * half as i64 - 1;
                    let (lo, hi) = (lo.max(1), hi.min(n as i64));
                    blocks.push(if lo > hi {
                        Shortcut::EMPTY
                    } else {
                        make(lo as usize, hi as usize)?
                    });
                }
            }
            levels.push(Level { half, blocks });
            prev = bk;
            k += 1;
        }

        let mut segments = Vec::with_capacity(r * (2 * alpha + 1));
        for &b in &starts {
            let lo = b as i64 - alpha as i64;
            for p in lo..=b as i64 + alpha as i64 {
                segments.push(if p >= 1 && p <= n as i64 {
                    idx.sa(p as usize) as u64
                } else {
                    MISSING
                });
            }
        }
        Ok(Rlcsa {
            n,
            sigma: bwt.sigma(),
            tau,
            alpha,
            top,
            starts,
            levels,
            lt,
            segments,
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

    pub fn runs(&self) -> usize {
        self.starts.len()
    }

    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    /// First run start at or after the image start; it lies inside the image.
    fn anchor(&self, sc: Shortcut) -> usize {
        self.starts.partition_point(|&s| (s as u64) < sc.target)
    }

    fn segment(&self, anchor: usize, x: usize) -> Result<u64> {
        let off = x as i64 - self.starts[anchor] as i64;
        if off.unsigned_abs() as usize > self.alpha {
            return Err(Error::Malformed(format!("row {x} outside the segment of run {anchor}")));
        }
        let v = self.segments[anchor * (2 * self.alpha + 1) + (off + self.alpha as i64) as usize];
        if v == MISSING {
            return Err(Error::Malformed(format!("row {x} has no stored SA value")));
        }
        Ok(v)
    }

    /// Block of `level` around run `anchor` containing row `x`:
    /// `(first row, last row, shortcut)`.
    fn block(&self, level: &Level, anchor: usize, x: usize) -> (usize, usize, Shortcut) {
        let b = self.starts[anchor] as i64;
        let h = level.half as i64;
        let t = self.tau as i64;
        let j = (x as i64 - b).div_euclid(h).clamp(-2 * t, 2 * t - 2);
        let lo = (b + j * h).max(1) as usize;
        let hi = (b + j * h + 2 * h - 1).min(self.n as i64) as usize;
        let sc = level.blocks[anchor * (4 * self.tau - 1) + (j + 2 * t) as usize];
        (lo, hi, sc)
    }

    fn top_block(&self, x: usize) -> (usize, usize, Shortcut) {
        let blk = (x - 1) / self.top;
        let s = blk * self.top + 1;
        (s, (s + self.top - 1).min(self.n), self.lt[blk])
    }

    /// `SA[p]` and the number of shortcut levels followed.
    pub fn sa_at_with_depth(&self, p: usize) -> Result<(usize, usize)> {
        if p == 0 || p > self.n {
            return Err(Error::OutOfRange { pos: p, len: self.n });
        }
        if let Ok(run) = self.starts.binary_search(&p) {
            return Ok((self.segment(run, p)? as usize, 0));
        }
        let (s, _, sc) = self.top_block(p);
        let mut x = sc.target as usize + (p - s);
        let mut dsum = sc.d;
        let mut anchor = self.anchor(sc);
        let mut depth = 1;
        for level in &self.levels {
            if (x as i64 - self.starts[anchor] as i64).unsigned_abs() as usize <= self.alpha {
                break;
            }
            let (lo, _, sc) = self.block(level, anchor, x);
            x = sc.target as usize + (x - lo);
            dsum += sc.d;
            anchor = self.anchor(sc);
            depth += 1;
        }
        Ok(((self.segment(anchor, x)? + dsum) as usize, depth))
    }

    pub fn sa_at(&self, p: usize) -> Result<usize> {
        Ok(self.sa_at_with_depth(p)?.0)
    }

    /// `SA[p..p+len-1]`.
    pub fn sa_segment(&self, p: usize, len: usize) -> Result<Vec<usize>> {
        if p == 0 || p + len > self.n + 1 {
            return Err(Error::OutOfRange {
                pos: p + len.saturating_sub(1),
                len: self.n,
            });
        }
        let mut out = Vec::with_capacity(len);
        let end = p + len - 1;
        let mut pos = p;
        while pos <= end {
            let (s, t, sc) = self.top_block(pos);
            let piece_end = end.min(t);
            let x = sc.target as usize;
            self.descend(0, self.anchor(sc), x + (pos - s), x + (piece_end - s), sc.d, &mut out)?;
            pos = piece_end + 1;
        }
        Ok(out)
    }

    fn descend(&self, level: usize, anchor: usize, x1: usize, x2: usize, dsum: u64, out: &mut Vec<usize>) -> Result<()> {
        let b = self.starts[anchor] as i64;
        let a = self.alpha as i64;
        if level == self.levels.len() || (x1 as i64 - b >= -a && x2 as i64 - b <= a) {
            for x in x1..=x2 {
                out.push((self.segment(anchor, x)? + dsum) as usize);
            }
            return Ok(());
        }
        let lv = &self.levels[level];
        let mut cur = x1;
        while cur <= x2 {
            let (lo, hi, sc) = self.block(lv, anchor, cur);
            let pend = x2.min(hi);
            let t = sc.target as usize;
            self.descend(level + 1, self.anchor(sc), t + (cur - lo), t + (pend - lo), dsum + sc.d, out)?;
            cur = pend + 1;
        }
        Ok(())
    }

    /// Machine words of the serialized form, excluding the magic.
    pub fn stored_words(&self) -> usize {
        8 + self.starts.len()
            + self.levels.iter().map(|l| 1 + 2 * l.blocks.len()).sum::<usize>()
            + 1
            + 2 * self.lt.len()
            + self.segments.len()
    }

    pub fn serialized_size(&self) -> usize {
        5 + 8 * self.stored_words()
    }

    /// Writes the `RCSA1` format.
    pub fn write_to<W: Write>(&self, w: &mut W) -> Result<()> {
        w.write_all(b"RCSA1")?;
        for v in [
            self.n as u64,
            self.sigma,
            self.starts.len() as u64,
            self.tau as u64,
            self.levels.len() as u64,
            self.alpha as u64,
            self.top as u64,
            self.segments.len() as u64,
        ] {
            binio::write_u64(w, v)?;
        }
        for &s in &self.starts {
            binio::write_u64(w, s as u64)?;
        }
        let put = |w: &mut W, sc: &Shortcut| -> Result<()> {
            binio::write_u64(w, sc.d)?;
            binio::write_u64(w, sc.target)
        };
        for l in &self.levels {
            binio::write_u64(w, l.half as u64)?;
            for sc in &l.blocks {
                put(w, sc)?;
            }
        }
        binio::write_u64(w, self.lt.len() as u64)?;
        for sc in &self.lt {
            put(w, sc)?;
        }
        for &v in &self.segments {
            binio::write_u64(w, v)?;
        }
        Ok(())
    }

    pub fn read_from<R: Read>(r: &mut R) -> Result<Self> {
        binio::expect_magic(r, b"RCSA1")?;
        let n = binio::read_usize(r)?;
        let sigma = binio::read_u64(r)?;
        let runs = binio::read_usize(r)?;
        let tau = binio::read_usize(r)?;
        let level_count = binio::read_usize(r)?;
        let alpha = binio::read_usize(r)?;
        let top = binio::read_usize(r)?;
        let seg_len = binio::read_usize(r)?;
        if tau < 2 || runs == 0 || top == 0 || seg_len != runs * (2 * alpha + 1) {
            return Err(Error::Format("inconsistent RCSA1 header".into()));
        }
        let starts = (0..runs).map(|_| binio::read_usize(r)).collect::<Result<Vec<_>>>()?;
        let get = |r: &mut R| -> Result<Shortcut> {
            Ok(Shortcut {
                d: binio::read_u64(r)?,
                target: binio::read_u64(r)?,
            })
        };
        let mut levels = Vec::with_capacity(level_count);
        for _ in 0..level_count {
            let half = binio::read_usize(r)?;
            let blocks = (0..runs * (4 * tau - 1)).map(|_| get(r)).collect::<Result<Vec<_>>>()?;
            levels.push(Level { half, blocks });
        }
        let lt_len = binio::read_usize(r)?;
        let lt = (0..lt_len).map(|_| get(r)).collect::<Result<Vec<_>>>()?;
        let segments = (0..seg_len).map(|_| binio::read_u64(r)).collect::<Result<Vec<_>>>()?;
        Ok(Rlcsa {
            n,
            sigma,
            tau,
            alpha,
            top,
            starts,
            levels,
            lt,
            segments,
        })
    }
}

impl SaAccess for Rlcsa {
    fn len(&self) -> usize {
        self.n
    }

    fn sa(&self, i: usize) -> usize {
        self.sa_at(i).expect("row within 1..=n")
    }

    fn sa_range(&self, p: usize, len: usize) -> Vec<usize> {
        self.sa_segment(p, len).expect("range within 1..=n")
    }
}
