//! τ-runs, order-preserving names of τ-substrings, LF^τ shortcuts and the
//! cross-string suffix-rank structure used when merging BWTs.
//!
//! A τ-run is a maximal interval of rows on which LF^τ is a shift and all rows
//! are preceded by the same τ symbols (taken cyclically). Its start set is
//! `R_τ = Q_0 ∪ … ∪ Q_{τ-1}` with `Q_0` the BWT run starts and
//! `Q_j = {Ψ(x) : x ∈ Q_{j-1}, Ψ(x) ∉ Q_0}`.

use crate::error::{Error, Result};
use crate::rlbwt::{IndexedRlbwt, RunBuilder};

/// Boundaries of the τ-runs, optionally with their τ-substrings and LF^τ at
/// each run start.
#[derive(Debug, Clone)]
pub struct TauRuns {
    tau: usize,
    starts: Vec<usize>,
    /// `tau` symbols per run, in text order.
    substrings: Option<Vec<u64>>,
    lf_tau: Option<Vec<usize>>,
}

/// The sorted start set `R_τ`.
pub fn tau_run_starts(bwt: &IndexedRlbwt, tau: usize) -> Result<Vec<usize>> {
    if tau == 0 {
        return Err(Error::InvalidParameter("tau must be at least 1".into()));
    }
    let runs = bwt.bwt();
    let mut out = Vec::with_capacity(runs.runs() * tau.min(4));
    for &x in runs.run_starts() {
        out.push(x);
        let mut y = x;
        for _ in 1..tau {
            y = bwt.psi(y);
            if runs.is_run_start(y) {
                break;
            }
            out.push(y);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

impl TauRuns {
    /// Enumerates `R_τ`; when requested, walks τ LF-steps from every run start
    /// to record the τ-substring and the LF^τ image.
    pub fn build(bwt: &IndexedRlbwt, tau: usize, substrings: bool, lf_tau: bool) -> Result<Self> {
        let starts = tau_run_starts(bwt, tau)?;
        let mut subs = substrings.then(|| Vec::with_capacity(starts.len() * tau));
        let mut lfs = lf_tau.then(|| Vec::with_capacity(starts.len()));
        if substrings || lf_tau {
            let mut buf = vec![0u64; tau];
            for &b in &starts {
                let mut row = b;
                for t in (0..tau).rev() {
                    buf[t] = bwt.get(row);
                    row = bwt.lf(row);
                }
                if let Some(s) = subs.as_mut() {
                    s.extend_from_slice(&buf);
                }
                if let Some(l) = lfs.as_mut() {
                    l.push(row);
                }
            }
        }
        Ok(TauRuns {
            tau,
            starts,
            substrings: subs,
            lf_tau: lfs,
        })
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn starts(&self) -> &[usize] {
        &self.starts
    }

    pub fn len(&self) -> usize {
        self.starts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.starts.is_empty()
    }

    /// 0-based τ-run containing row `i`.
    #[inline]
    pub fn run_of(&self, i: usize) -> usize {
        self.starts.partition_point(|&s| s <= i) - 1
    }

    /// τ-substring of run `k`, if recorded.
    pub fn substring(&self, k: usize) -> Option<&[u64]> {
        self.substrings
            .as_ref()
            .map(|s| &s[k * self.tau..(k + 1) * self.tau])
    }

    /// LF^τ of row `i`.
    pub fn lf_tau(&self, i: usize) -> Result<usize> {
        let lf = self
            .lf_tau
            .as_ref()
            .ok_or_else(|| Error::InvalidParameter("LF^tau samples were not recorded".into()))?;
        if i == 0 {
            return Err(Error::OutOfRange { pos: i, len: usize::MAX });
        }
        let k = self.run_of(i);
        Ok(lf[k] + (i - self.starts[k]))
    }

    #[inline]
    fn lf_tau_unchecked(&self, i: usize) -> usize {
        let k = self.run_of(i);
        self.lf_tau.as_ref().unwrap()[k] + (i - self.starts[k])
    }
}

/// Order-preserving names for the τ-substrings of several [`TauRuns`] at once:
/// equal substrings share a name, and names compare like the substrings.
pub fn joint_names(sets: &[&TauRuns]) -> Result<Vec<Vec<u64>>> {
    let tau = sets.first().map_or(1, |s| s.tau);
    let mut items: Vec<(usize, usize)> = Vec::new();
    for (si, set) in sets.iter().enumerate() {
        if set.tau != tau || set.substrings.is_none() {
            return Err(Error::InvalidParameter(
                "naming needs substrings recorded with a common tau".into(),
            ));
        }
        items.extend((0..set.len()).map(|k| (si, k)));
    }
    let sub = |&(si, k): &(usize, usize)| sets[si].substring(k).unwrap();
    // LSD: stable sort on each position, last position first.
    for pos in (0..tau).rev() {
        items.sort_by_key(|it| sub(it)[pos]);
    }
    let mut names: Vec<Vec<u64>> = sets.iter().map(|s| vec![0; s.len()]).collect();
    let mut name = 0u64;
    for w in 0..items.len() {
        if w > 0 && sub(&items[w - 1]) != sub(&items[w]) {
            name += 1;
        }
        names[items[w].0][items[w].1] = name;
    }
    Ok(names)
}

/// τ-runs of a single string with order-preserving names.
#[derive(Debug, Clone)]
pub struct TauNameIndex {
    runs: TauRuns,
    names: Vec<u64>,
}

impl TauNameIndex {
    pub fn build(bwt: &IndexedRlbwt, tau: usize) -> Result<Self> {
        let mut runs = TauRuns::build(bwt, tau, true, false)?;
        let names = joint_names(&[&runs])?.pop().unwrap();
        runs.substrings = None;
        Ok(TauNameIndex { runs, names })
    }

    pub fn tau(&self) -> usize {
        self.runs.tau
    }

    pub fn runs(&self) -> &TauRuns {
        &self.runs
    }

    /// Name of the τ symbols preceding the rotation at row `i`.
    #[inline]
    pub fn name_of_row(&self, i: usize) -> u64 {
        self.names[self.runs.run_of(i)]
    }

    pub fn stored_words(&self) -> usize {
        2 * self.names.len()
    }
}

/// Answers, for any rotation of `S`, how many rotations of `S'` are smaller.
///
/// Requires the last symbol of `S` to occur exactly once in `S` and never in
/// `S'`; comparisons are of infinite periodic strings.
#[derive(Debug, Clone)]
pub struct SuffixRankSupport {
    tau: usize,
    /// Sampled `(row in S, rank among rotations of S')`, sorted by row.
    pairs: Vec<(usize, usize)>,
}

impl SuffixRankSupport {
    pub fn build(s: &IndexedRlbwt, s_last: u64, sp: &IndexedRlbwt, tau: usize) -> Result<Self> {
        if s.is_empty() || sp.is_empty() {
            return Err(Error::EmptyInput);
        }
        if s.count(s_last) != 1 || sp.count(s_last) != 0 {
            return Err(Error::InvalidParameter(
                "last symbol of S must be unique in S and absent from S'".into(),
            ));
        }
        let m = s.len();
        let tau = tau.clamp(1, m);
        let runs_s = TauRuns::build(s, tau, true, true)?;
        let runs_sp = TauRuns::build(sp, tau, true, false)?;
        let mut names = joint_names(&[&runs_s, &runs_sp])?;
        let names_sp = names.pop().unwrap();
        let names_s = names.pop().unwrap();

        // S' with each row labelled by the name of its τ-run.
        let mut nb = RunBuilder::new();
        for k in 0..runs_sp.len() {
            let end = runs_sp.starts.get(k + 1).map_or(sp.len() + 1, |&x| x);
            nb.push(names_sp[k], end - runs_sp.starts[k]);
        }
        let named = IndexedRlbwt::new(nb.finish(u64::MAX));

        let mut row = s.c_of(s_last) + 1;
        let mut rank = sp.c_of(s_last);
        let mut pos = m;
        let mut pairs = Vec::with_capacity(m / tau + 1);
        pairs.push((row, rank));
        while pos > tau {
            let name = names_s[runs_s.run_of(row)];
            rank = named.backward_search_step(rank, name);
            row = runs_s.lf_tau_unchecked(row);
            pos -= tau;
            pairs.push((row, rank));
        }
        pairs.sort_unstable();
        Ok(SuffixRankSupport { tau, pairs })
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn samples(&self) -> usize {
        self.pairs.len()
    }

    /// Number of rotations of `S'` smaller than the rotation of `S` at `row`.
    pub fn rank(&self, s: &IndexedRlbwt, sp: &IndexedRlbwt, row: usize) -> Result<usize> {
        if row == 0 || row > s.len() {
            return Err(Error::OutOfRange { pos: row, len: s.len() });
        }
        let mut cur = row;
        let mut syms = Vec::with_capacity(self.tau);
        let rank = loop {
            if let Ok(p) = self.pairs.binary_search_by_key(&cur, |&(r, _)| r) {
                break self.pairs[p].1;
            }
            if syms.len() >= self.tau {
                return Err(Error::Malformed("no sampled rotation within tau steps".into()));
            }
            cur = s.psi(cur);
            syms.push(s.get(cur));
        };
        Ok(syms
            .iter()
            .rev()
            .fold(rank, |r, &c| sp.backward_search_step(r, c)))
    }
}
