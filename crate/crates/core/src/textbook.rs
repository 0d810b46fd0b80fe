//! Distinct substrings and the longest substring occurring at least k times,
//! both answered from LCP information near BWT run boundaries.

use crate::error::{Error, Result};
use crate::index::TextIndex;
use crate::lz77::Neighbourhoods;
use crate::plcp::{IrreducibleList, PlcpSucc};
use crate::rlcsa::ShortcutEngine;
use crate::sa_isa_support::SaAccess;

fn tri(v: u128) -> u128 {
    v * (v + 1) / 2
}

/// Distinct non-empty substrings of the text without its sentinel.
///
/// Every irreducible value `ℓ` at position `i` covers the PLCP stretch
/// `ℓ, ℓ-1, …` up to the next irreducible position, which sums the whole
/// PLCP array; the `n` suffixes of `T$` are the substrings holding `$`.
pub fn distinct_substrings(list: &IrreducibleList) -> u128 {
    let n = list.text_len() as u128;
    let e = list.entries();
    let mut covered = 0u128;
    for (k, &(i, l)) in e.iter().enumerate() {
        let next = e.get(k + 1).map_or(list.text_len() + 1, |x| x.0);
        let (v, d) = (l as u128, (next - i) as u128);
        covered += if v < d { tri(v) } else { d * (v - d) + tri(d) };
    }
    tri(n) - covered - n
}

/// LCP values over blocks of window starts, with blocks away from run
/// boundaries recovered from their LF-shortcut image: `LCP[i] =
/// LCP[LF^d[i]] - d` whenever no row of the block meets a run start in
/// fewer than `d` steps.
#[derive(Debug, Clone)]
pub struct LcpWindows {
    n: usize,
    tau: usize,
    width: usize,
    /// `(d, first image row)` per block.
    blocks: Vec<(u64, usize)>,
    store: Neighbourhoods,
}

impl LcpWindows {
    /// Windows of `width` consecutive LCP entries starting at rows
    /// `2..=n-width+1`, grouped `tau` starts per block.
    pub fn build<S: SaAccess>(
        idx: &TextIndex,
        sa: &S,
        engine: &ShortcutEngine,
        plcp: &PlcpSucc,
        tau: usize,
        width: usize,
        dense: bool,
    ) -> Result<Self> {
        let n = idx.len();
        if tau == 0 || width == 0 || width + 1 > n {
            return Err(Error::InvalidParameter(format!(
                "window width {width} and block size {tau} do not fit a text of length {n}"
            )));
        }
        let runs = idx.bwt().bwt();
        let reach = tau + width - 1;
        let mut failed = None;
        let store = Neighbourhoods::build(runs.run_starts(), n, reach, dense, |p, len| {
            sa.sa_range(p, len)
                .into_iter()
                .map(|j| {
                    plcp.plcp(j).map(|v| v as u64).unwrap_or_else(|e| {
                        failed = Some(e.to_string());
                        0
                    })
                })
                .collect()
        });
        if let Some(e) = failed {
            return Err(Error::Malformed(e));
        }
        let mut me = LcpWindows {
            n,
            tau,
            width,
            blocks: Vec::new(),
            store,
        };
        for k in 0..me.block_count() {
            let (s, len) = me.rows(k);
            let t = s + len - 1;
            me.blocks.push(if dense || runs.run_start(runs.run_of(t)) >= s {
                (0, s)
            } else {
                let (d, x) = engine.shortcut(idx, s, t)?;
                (d as u64, x)
            });
        }
        Ok(me)
    }

    fn starts(&self) -> usize {
        self.n - self.width
    }

    pub fn block_count(&self) -> usize {
        self.starts().div_ceil(self.tau)
    }

    /// First row and row count of block `k`.
    fn rows(&self, k: usize) -> (usize, usize) {
        let s = 2 + k * self.tau;
        let last_start = (s + self.tau - 1).min(self.n - self.width + 1);
        (s, last_start - s + self.width)
    }

    /// `LCP[s..s+len-1]` of block `k` with its first row `s`.
    pub fn block_lcp(&self, k: usize) -> (usize, Vec<u64>) {
        let (s, len) = self.rows(k);
        let (d, x) = self.blocks[k];
        let vals = self.store.slice(x, len).iter().map(|&v| v.saturating_sub(d)).collect();
        (s, vals)
    }

    /// Maximum over windows of the window minimum.
    pub fn max_window_min(&self) -> usize {
        let w = self.width;
        let mut best = 0;
        for k in 0..self.block_count() {
            let (_, vals) = self.block_lcp(k);
            let mut dq: std::collections::VecDeque<usize> = std::collections::VecDeque::new();
            for (q, &v) in vals.iter().enumerate() {
                while dq.back().is_some_and(|&b| vals[b] >= v) {
                    dq.pop_back();
                }
                dq.push_back(q);
                if q + 1 >= w {
                    while *dq.front().unwrap() + w <= q {
                        dq.pop_front();
                    }
                    best = best.max(vals[*dq.front().unwrap()] as usize);
                }
            }
        }
        best
    }
}

/// Length of the longest substring occurring at least `k` times, i.e. the
/// largest minimum over `k - 1` consecutive LCP entries.
pub fn longest_k_occurring<S: SaAccess>(
    idx: &TextIndex,
    sa: &S,
    engine: &ShortcutEngine,
    plcp: &PlcpSucc,
    k: usize,
    tau: usize,
    dense: bool,
) -> Result<usize> {
    let payload = idx.len() - 1;
    if k < 2 || k > payload {
        return Err(Error::InvalidParameter(format!("k must lie in 2..={payload}, got {k}")));
    }
    Ok(LcpWindows::build(idx, sa, engine, plcp, tau, k - 1, dense)?.max_window_min())
}
