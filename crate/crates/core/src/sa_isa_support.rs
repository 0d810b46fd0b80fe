//! SA and ISA access from an RLBWT through evenly spaced text-position
//! samples.
//!
//! The rows of text positions `n, n-τ, n-2τ, …` are found by iterating LF^τ
//! from row 1 (the rotation starting at the sentinel). `sa(i)` walks LF until
//! it meets a sampled row; `isa(j)` starts at the nearest sample at or after
//! `j` and walks back.

use crate::error::{Error, Result};
use crate::rlbwt::IndexedRlbwt;
use crate::tau_index::TauRuns;

/// Use LF^τ shortcuts only when enumerating the τ-runs costs at most this
/// many LF-steps per text position.
const SHORTCUT_BUDGET: usize = 4;

#[derive(Debug, Clone)]
pub struct SaIsaSupport {
    tau: usize,
    n: usize,
    /// `(row, text position)` sorted by row.
    by_row: Vec<(usize, usize)>,
    /// `by_pos[k]` is the row of text position `n - kτ`.
    by_pos: Vec<usize>,
}

/// Random access to SA values; implemented by the sampled support and by the
/// RLCSA.
pub trait SaAccess {
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn sa(&self, i: usize) -> usize;

    /// `SA[p..p+len-1]`.
    fn sa_range(&self, p: usize, len: usize) -> Vec<usize> {
        (p..p + len).map(|i| self.sa(i)).collect()
    }
}

impl SaIsaSupport {
    pub fn build(bwt: &IndexedRlbwt, tau: usize) -> Result<Self> {
        let n = bwt.len();
        if tau == 0 || tau > n {
            return Err(Error::InvalidParameter(format!("tau {tau} outside 1..={n}")));
        }
        let count = (n - 1) / tau + 1;
        let mut by_pos = Vec::with_capacity(count);
        if bwt.runs().saturating_mul(tau).saturating_mul(tau) <= SHORTCUT_BUDGET * n {
            let runs = TauRuns::build(bwt, tau, false, true)?;
            let mut row = 1;
            by_pos.push(row);
            for _ in 1..count {
                row = runs.lf_tau(row)?;
                by_pos.push(row);
            }
        } else {
            let mut row = 1;
            by_pos.push(row);
            for step in 1..=(count - 1) * tau {
                row = bwt.lf(row);
                if step % tau == 0 {
                    by_pos.push(row);
                }
            }
        }
        let mut by_row: Vec<(usize, usize)> = by_pos
            .iter()
            .enumerate()
            .map(|(k, &row)| (row, n - k * tau))
            .collect();
        by_row.sort_unstable();
        Ok(SaIsaSupport { tau, n, by_row, by_pos })
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn samples(&self) -> &[(usize, usize)] {
        &self.by_row
    }

    /// `SA[i]` together with the number of LF-steps taken.
    pub fn sa_with_steps(&self, bwt: &IndexedRlbwt, i: usize) -> (usize, usize) {
        let mut row = i;
        let mut steps = 0;
        loop {
            if let Ok(k) = self.by_row.binary_search_by_key(&row, |&(r, _)| r) {
                let v = self.by_row[k].1 + steps;
                return (if v > self.n { v - self.n } else { v }, steps);
            }
            row = bwt.lf(row);
            steps += 1;
            debug_assert!(steps < self.tau.max(2) + 1);
        }
    }

    #[inline]
    pub fn sa(&self, bwt: &IndexedRlbwt, i: usize) -> usize {
        self.sa_with_steps(bwt, i).0
    }

    /// `ISA[j]` together with the number of LF-steps taken.
    pub fn isa_with_steps(&self, bwt: &IndexedRlbwt, j: usize) -> (usize, usize) {
        let k = (self.n - j) / self.tau;
        let steps = self.n - k * self.tau - j;
        let mut row = self.by_pos[k];
        for _ in 0..steps {
            row = bwt.lf(row);
        }
        (row, steps)
    }

    #[inline]
    pub fn isa(&self, bwt: &IndexedRlbwt, j: usize) -> usize {
        self.isa_with_steps(bwt, j).0
    }

    pub fn try_sa(&self, bwt: &IndexedRlbwt, i: usize) -> Result<usize> {
        self.check(i)?;
        Ok(self.sa(bwt, i))
    }

    pub fn try_isa(&self, bwt: &IndexedRlbwt, j: usize) -> Result<usize> {
        self.check(j)?;
        Ok(self.isa(bwt, j))
    }

    fn check(&self, x: usize) -> Result<()> {
        if x == 0 || x > self.n {
            Err(Error::OutOfRange { pos: x, len: self.n })
        } else {
            Ok(())
        }
    }

    pub fn stored_words(&self) -> usize {
        3 * self.by_pos.len()
    }
}
