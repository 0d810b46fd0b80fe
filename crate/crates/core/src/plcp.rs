//! Irreducible LCP values, the 2n-bit PLCP encoding, and the LCE primitive
//! built on τ-names.

use std::io::{Read, Write};

use crate::binio;
use crate::bitvec::BitVec;
use crate::error::{Error, Result};
use crate::index::TextIndex;

/// Length of the longest common prefix of `T[j1..n]` and `T[j2..n]`.
///
/// Compares τ-blocks by the name of the row of `ISA[j + τ]`, then finishes
/// with at most τ single-symbol steps along Ψ.
pub fn lce(idx: &TextIndex, j1: usize, j2: usize) -> usize {
    let n = idx.len();
    if j1 == j2 {
        return n - j1 + 1;
    }
    let names = idx.names();
    let tau = names.tau();
    let wrap = |j: usize| if j > n { j - n } else { j };
    let mut l = 0;
    while j1.max(j2) + l + tau <= n + 1 {
        let r1 = idx.isa(wrap(j1 + l + tau));
        let r2 = idx.isa(wrap(j2 + l + tau));
        if names.name_of_row(r1) != names.name_of_row(r2) {
            break;
        }
        l += tau;
    }
    let bwt = idx.bwt();
    let (mut x1, mut x2) = (idx.isa(j1 + l), idx.isa(j2 + l));
    while bwt.f_symbol(x1) == bwt.f_symbol(x2) {
        l += 1;
        x1 = bwt.psi(x1);
        x2 = bwt.psi(x2);
    }
    l
}

/// `(text position, PLCP value)` for every BWT run start, sorted by position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibleList {
    n: usize,
    entries: Vec<(usize, usize)>,
}

impl IrreducibleList {
    pub fn entries(&self) -> &[(usize, usize)] {
        &self.entries
    }

    pub fn text_len(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sum(&self) -> u128 {
        self.entries.iter().map(|&(_, l)| l as u128).sum()
    }

    pub fn max_value(&self) -> usize {
        self.entries.iter().map(|&(_, l)| l).max().unwrap_or(0)
    }

    /// Full PLCP array by decrementing across reducible positions.
    pub fn expand(&self) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(self.n);
        let mut next = 0;
        for j in 1..=self.n {
            if next < self.entries.len() && self.entries[next].0 == j {
                out.push(self.entries[next].1);
                next += 1;
            } else {
                let prev = out.last().copied().unwrap_or(0);
                if prev == 0 {
                    return Err(Error::Malformed(format!("reducible PLCP[{j}] would be negative")));
                }
                out.push(prev - 1);
            }
        }
        Ok(out)
    }
}

/// PLCP values at BWT run starts: `PLCP[SA[b]] = lce(SA[b-1], SA[b])`, with
/// the first row contributing 0.
pub fn build_irreducible(idx: &TextIndex) -> IrreducibleList {
    let runs = idx.bwt().bwt();
    let sa = idx.sa_support();
    let bwt = idx.bwt();
    let mut entries: Vec<(usize, usize)> = runs
        .run_starts()
        .iter()
        .map(|&b| {
            let j2 = sa.sa(bwt, b);
            if b == 1 {
                (j2, 0)
            } else {
                (j2, lce(idx, sa.sa(bwt, b - 1), j2))
            }
        })
        .collect();
    entries.sort_unstable();
    IrreducibleList { n: idx.len(), entries }
}

/// PLCP as a 2n-bit vector with bit `2j + PLCP[j]` set (1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlcpSucc {
    n: usize,
    bits: BitVec,
}

impl PlcpSucc {
    pub fn from_irreducible(list: &IrreducibleList) -> Result<Self> {
        Self::from_plcp(&list.expand()?)
    }

    pub fn from_plcp(plcp: &[usize]) -> Result<Self> {
        let n = plcp.len();
        let mut positions = Vec::with_capacity(n);
        for (j0, &v) in plcp.iter().enumerate() {
            let j = j0 + 1;
            if v > n - j {
                return Err(Error::Malformed(format!("PLCP[{j}] = {v} exceeds suffix length")));
            }
            positions.push(2 * j + v - 1);
        }
        Ok(PlcpSucc {
            n,
            bits: BitVec::from_positions(2 * n, positions),
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    /// 1-based positions of the set bits.
    pub fn set_positions(&self) -> Vec<usize> {
        self.bits.ones().map(|p| p + 1).collect()
    }

    /// `PLCP[j] = select1(j) - 2j`.
    pub fn plcp(&self, j: usize) -> Result<usize> {
        if j == 0 || j > self.n {
            return Err(Error::OutOfRange { pos: j, len: self.n });
        }
        let p = self.bits.select1(j).ok_or_else(|| Error::Malformed("missing set bit".into()))? + 1;
        p.checked_sub(2 * j)
            .ok_or_else(|| Error::Malformed(format!("negative PLCP at {j}")))
    }

    pub fn decode(&self) -> Vec<usize> {
        self.bits
            .ones()
            .enumerate()
            .map(|(k, p)| p + 1 - 2 * (k + 1))
            .collect()
    }

    /// Writes the `PLCP1` format.
    pub fn write_to<W: Write>(&self, w: &mut W) -> Result<()> {
        w.write_all(b"PLCP1")?;
        binio::write_u64(w, self.n as u64)?;
        let nbytes = (2 * self.n).div_ceil(8);
        let bytes: Vec<u8> = self
            .bits
            .words()
            .iter()
            .flat_map(|x| x.to_le_bytes())
            .take(nbytes)
            .collect();
        w.write_all(&bytes)?;
        Ok(())
    }

    pub fn read_from<R: Read>(r: &mut R) -> Result<Self> {
        binio::expect_magic(r, b"PLCP1")?;
        let n = binio::read_usize(r)?;
        let mut bytes = vec![0u8; (2 * n).div_ceil(8)];
        r.read_exact(&mut bytes)?;
        let words = bytes
            .chunks(8)
            .map(|c| {
                let mut b = [0u8; 8];
                b[..c.len()].copy_from_slice(c);
                u64::from_le_bytes(b)
            })
            .collect();
        let bits = BitVec::from_words(2 * n, words);
        if bits.count_ones() != n {
            return Err(Error::Format(format!("expected {n} set bits, found {}", bits.count_ones())));
        }
        Ok(PlcpSucc { n, bits })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::IndexConfig;
    use crate::oracle;
    use crate::text_core::PackedText;
    use proptest::prelude::*;

    fn index(body: &[u8], tau2: Option<usize>) -> TextIndex {
        let t = PackedText::from_bytes(body, 1).unwrap();
        let cfg = IndexConfig {
            tau2,
            ..Default::default()
        };
        TextIndex::build(&t, &cfg).unwrap().0
    }

    #[test]
    fn banana_lce() {
        for tau2 in 1..=7 {
            let idx = index(b"banana", Some(tau2));
            assert_eq!(lce(&idx, 2, 4), 3);
            assert_eq!(lce(&idx, 1, 7), 0);
            assert_eq!(lce(&idx, 3, 3), 5);
        }
    }

    #[test]
    fn banana_plcp() {
        let idx = index(b"banana", Some(2));
        let list = build_irreducible(&idx);
        assert_eq!(list.len(), 5);
        assert_eq!(list.expand().unwrap(), vec![0, 3, 2, 1, 0, 0, 0]);
        let succ = PlcpSucc::from_irreducible(&list).unwrap();
        assert_eq!(succ.set_positions(), vec![2, 7, 8, 9, 10, 12, 14]);
        assert_eq!(succ.plcp(2).unwrap(), 3);
        let mut buf = Vec::new();
        succ.write_to(&mut buf).unwrap();
        assert_eq!(buf.len(), 5 + 8 + 2);
        assert_eq!(PlcpSucc::read_from(&mut buf.as_slice()).unwrap(), succ);
    }

    #[test]
    fn small_cases() {
        let unary = index(b"aaa", None);
        let list = build_irreducible(&unary);
        assert_eq!(list.len(), 2);
        assert_eq!(list.expand().unwrap(), vec![2, 1, 0, 0]);
        let distinct = PlcpSucc::from_plcp(&[0, 0, 0]).unwrap();
        assert_eq!(distinct.set_positions(), vec![2, 4, 6]);
        let bad = IrreducibleList { n: 2, entries: vec![(2, 0)] };
        assert!(bad.expand().is_err());
    }

    proptest! {
        #[test]
        fn plcp_matches_oracle(body in proptest::collection::vec(b'a'..b'd', 1..300), tau2 in 1usize..17) {
            let idx = index(&body, Some(tau2));
            let t = PackedText::from_bytes(&body, 1).unwrap().codes();
            let o = oracle::build_tables(&t);
            let list = build_irreducible(&idx);
            let plcp = list.expand().unwrap();
            prop_assert_eq!(&plcp, &o.plcp);
            let succ = PlcpSucc::from_irreducible(&list).unwrap();
            prop_assert_eq!(succ.decode(), o.plcp.clone());
            let n = t.len();
            for j1 in 1..=n.min(40) {
                for j2 in 1..=n {
                    prop_assert_eq!(lce(&idx, j1, j2), oracle::lce(&t, j1, j2));
                }
            }
        }
    }
}
