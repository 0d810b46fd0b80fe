//! Brute-force reference implementations. Quadratic or worse; intended for
//! texts of a few thousand symbols.
//!
//! Tables follow the crate conventions: 1-based positions stored at index
//! `pos - 1`, texts that end with a unique smallest sentinel.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::lz77::Phrase;

/// SA, ISA, LCP, PLCP, BWT, LF, Ψ and Φ of a text, as plain arrays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleTables {
    pub sa: Vec<usize>,
    pub isa: Vec<usize>,
    pub lcp: Vec<usize>,
    pub plcp: Vec<usize>,
    pub bwt: Vec<u64>,
    pub lf: Vec<usize>,
    pub psi: Vec<usize>,
    /// `phi[SA[i]] = SA[i-1]`; 0 for the smallest suffix.
    pub phi: Vec<usize>,
}

/// Compares rotations starting at 0-based `a` and `b`.
fn cmp_rotations(t: &[u64], a: usize, b: usize) -> Ordering {
    let n = t.len();
    for k in 0..n {
        let (x, y) = (t[(a + k) % n], t[(b + k) % n]);
        if x != y {
            return x.cmp(&y);
        }
    }
    a.cmp(&b)
}

/// 1-based order of all rotations of `t`.
pub fn rotation_order(t: &[u64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..t.len()).collect();
    idx.sort_by(|&a, &b| cmp_rotations(t, a, b));
    idx.into_iter().map(|i| i + 1).collect()
}

/// BWT defined through sorted rotations; equals the suffix BWT whenever the
/// text ends with a unique smallest symbol.
pub fn rotation_bwt(t: &[u64]) -> Vec<u64> {
    let n = t.len();
    rotation_order(t)
        .into_iter()
        .map(|p| t[(p + n - 2) % n])
        .collect()
}

pub fn count_runs(seq: &[u64]) -> usize {
    if seq.is_empty() {
        return 0;
    }
    1 + seq.windows(2).filter(|w| w[0] != w[1]).count()
}

fn lcp_naive(t: &[u64], a: usize, b: usize) -> usize {
    t[a..].iter().zip(&t[b..]).take_while(|(x, y)| x == y).count()
}

/// All tables by explicit suffix sorting.
pub fn build_tables(t: &[u64]) -> OracleTables {
    let n = t.len();
    let mut sa0: Vec<usize> = (0..n).collect();
    sa0.sort_by(|&a, &b| t[a..].cmp(&t[b..]));
    let sa: Vec<usize> = sa0.iter().map(|&p| p + 1).collect();
    let mut isa = vec![0; n];
    for (i, &p) in sa.iter().enumerate() {
        isa[p - 1] = i + 1;
    }
    let mut lcp = vec![0; n];
    for i in 1..n {
        lcp[i] = lcp_naive(t, sa0[i - 1], sa0[i]);
    }
    let mut plcp = vec![0; n];
    let mut phi = vec![0; n];
    for i in 0..n {
        plcp[sa[i] - 1] = lcp[i];
        phi[sa[i] - 1] = if i == 0 { 0 } else { sa[i - 1] };
    }
    let bwt: Vec<u64> = sa.iter().map(|&p| t[(p + n - 2) % n]).collect();
    let lf: Vec<usize> = sa
        .iter()
        .map(|&p| isa[if p == 1 { n - 1 } else { p - 2 }])
        .collect();
    let mut psi = vec![0; n];
    for (i, &l) in lf.iter().enumerate() {
        psi[l - 1] = i + 1;
    }
    OracleTables {
        sa,
        isa,
        lcp,
        plcp,
        bwt,
        lf,
        psi,
        phi,
    }
}

/// Run starts of a BWT.
pub fn run_starts(bwt: &[u64]) -> Vec<usize> {
    (1..=bwt.len())
        .filter(|&i| i == 1 || bwt[i - 1] != bwt[i - 2])
        .collect()
}

/// `R_τ` from the `Q_j` recurrence over Ψ.
pub fn r_tau(tables: &OracleTables, tau: usize) -> Vec<usize> {
    let q0 = run_starts(&tables.bwt);
    let in_q0: HashSet<usize> = q0.iter().copied().collect();
    let mut all: HashSet<usize> = in_q0.clone();
    let mut cur = q0;
    for _ in 1..tau {
        cur = cur
            .iter()
            .map(|&i| tables.psi[i - 1])
            .filter(|p| !in_q0.contains(p))
            .collect();
        all.extend(cur.iter().copied());
    }
    let mut out: Vec<usize> = all.into_iter().collect();
    out.sort_unstable();
    out
}

/// Longest common suffix of the prefixes ending at rows `i-1` and `i`,
/// measured on rotations (index 0 unused; `lcs[1] = 0`).
pub fn lcs_array(t: &[u64], tables: &OracleTables) -> Vec<usize> {
    let n = t.len();
    let mut out = vec![0; n + 1];
    for i in 2..=n {
        let (a, b) = (tables.sa[i - 2] - 1, tables.sa[i - 1] - 1);
        let mut l = 0;
        while l < n && t[(a + n - 1 - l) % n] == t[(b + n - 1 - l) % n] {
            l += 1;
        }
        out[i] = l;
    }
    out
}

/// For every rotation of `s` (in `s`'s rotation order), the number of
/// rotations of `sp` that are smaller, comparing infinite periodic strings.
pub fn cross_ranks(s: &[u64], sp: &[u64]) -> Vec<usize> {
    let limit = s.len() + sp.len();
    let cmp = |a: usize, b: usize| -> Ordering {
        for k in 0..limit {
            let (x, y) = (s[(a + k) % s.len()], sp[(b + k) % sp.len()]);
            if x != y {
                return x.cmp(&y);
            }
        }
        Ordering::Equal
    };
    rotation_order(s)
        .into_iter()
        .map(|p| (0..sp.len()).filter(|&b| cmp(p - 1, b) == Ordering::Greater).count())
        .collect()
}

/// Length of the longest common prefix of the suffixes at 1-based `a`, `b`.
pub fn lce(t: &[u64], a: usize, b: usize) -> usize {
    lcp_naive(t, a - 1, b - 1)
}

pub fn nsv(sa: &[usize], i: usize) -> usize {
    (i + 1..=sa.len()).find(|&j| sa[j - 1] < sa[i - 1]).unwrap_or(0)
}

pub fn psv(sa: &[usize], i: usize) -> usize {
    (1..i).rev().find(|&j| sa[j - 1] < sa[i - 1]).unwrap_or(0)
}

/// Greedy LZ77 over `t` (no sentinel), sources chosen as the smallest
/// position attaining the longest match.
pub fn lz77_reference(t: &[u64]) -> Vec<Phrase> {
    let n = t.len();
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        let mut best = (0usize, 0usize);
        for p in 0..i {
            let l = t[p..].iter().zip(&t[i..]).take_while(|(x, y)| x == y).count();
            if l > best.1 {
                best = (p, l);
            }
        }
        if best.1 == 0 {
            out.push(Phrase::Literal(t[i]));
            i += 1;
        } else {
            out.push(Phrase::Copy {
                source: best.0 + 1,
                len: best.1,
            });
            i += best.1;
        }
    }
    out
}

/// Duval's algorithm; runs of equal factors grouped as `(start, len, exp)`.
pub fn lyndon_duval(t: &[u64]) -> Vec<(usize, usize, usize)> {
    let n = t.len();
    let mut factors: Vec<(usize, usize)> = Vec::new();
    let mut i = 0;
    while i < n {
        let (mut j, mut k) = (i + 1, i);
        while j < n && t[k] <= t[j] {
            if t[k] < t[j] {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        while i <= k {
            factors.push((i + 1, j - k));
            i += j - k;
        }
    }
    let mut out: Vec<(usize, usize, usize)> = Vec::new();
    for (s, l) in factors {
        match out.last_mut() {
            Some(last) if last.1 == l && t[last.0 - 1..last.0 - 1 + l] == t[s - 1..s - 1 + l] => last.2 += 1,
            _ => out.push((s, l, 1)),
        }
    }
    out
}

pub fn distinct_substrings_reference(t: &[u64]) -> u128 {
    let mut set = HashSet::new();
    for i in 0..t.len() {
        for j in i + 1..=t.len() {
            set.insert(&t[i..j]);
        }
    }
    set.len() as u128
}

/// Longest substring of `t` occurring at least `k` times (overlaps allowed).
pub fn longest_k_reference(t: &[u64], k: usize) -> usize {
    let occurs = |len: usize| -> bool {
        if len == 0 {
            return true;
        }
        let mut counts = std::collections::HashMap::new();
        for w in t.windows(len) {
            let c = counts.entry(w).or_insert(0usize);
            *c += 1;
            if *c >= k {
                return true;
            }
        }
        false
    };
    let (mut lo, mut hi) = (0, t.len());
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if occurs(mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

#[cfg(test)]
mod tests {
    use super::*;

    fn codes(s: &[u8]) -> Vec<u64> {
        let mut v: Vec<u64> = s.iter().map(|&b| b as u64).collect();
        v.push(0);
        v
    }

    #[test]
    fn banana_tables() {
        let t = codes(b"banana");
        let o = build_tables(&t);
        assert_eq!(o.sa, vec![7, 6, 4, 2, 1, 5, 3]);
        let bwt: Vec<u8> = o.bwt.iter().map(|&c| if c == 0 { b'$' } else { c as u8 }).collect();
        assert_eq!(&bwt, b"annb$aa");
        assert_eq!(o.plcp, vec![0, 3, 2, 1, 0, 0, 0]);
        assert_eq!(o.lf, vec![2, 6, 7, 5, 1, 3, 4]);
        assert_eq!(rotation_bwt(&t), o.bwt);
        for j in 2..=7 {
            assert_eq!(o.lf[o.isa[j - 1] - 1], o.isa[j - 2]);
        }
        for i in 2..=7 {
            assert_eq!(o.phi[o.sa[i - 1] - 1], o.sa[i - 2]);
        }
        assert_eq!(r_tau(&o, 1), vec![1, 2, 4, 5, 6]);
        assert_eq!(r_tau(&o, 2), vec![1, 2, 4, 5, 6, 7]);
    }

    #[test]
    fn degenerate_tables() {
        let o = build_tables(&codes(b"aaaa"));
        assert_eq!(count_runs(&o.bwt), 2);
        assert_eq!(build_tables(&[0]).sa, vec![1]);
    }

    #[test]
    fn reference_parsings() {
        let z: Vec<u64> = b"zzzzzipzip".iter().map(|&b| b as u64).collect();
        let p = lz77_reference(&z);
        assert_eq!(
            p,
            vec![
                Phrase::Literal(b'z' as u64),
                Phrase::Copy { source: 1, len: 4 },
                Phrase::Literal(b'i' as u64),
                Phrase::Literal(b'p' as u64),
                Phrase::Copy { source: 5, len: 3 },
            ]
        );
        let b: Vec<u64> = b"banana".iter().map(|&b| b as u64).collect();
        assert_eq!(lz77_reference(&b)[3], Phrase::Copy { source: 2, len: 3 });
        assert_eq!(lz77_reference(&[7]), vec![Phrase::Literal(7)]);
        assert_eq!(lyndon_duval(&b), vec![(1, 1, 1), (2, 2, 2), (6, 1, 1)]);
        assert_eq!(lyndon_duval(&[1, 1, 1, 1]), vec![(1, 1, 4)]);
        assert_eq!(lyndon_duval(&[1, 2]), vec![(1, 2, 1)]);
        assert_eq!(distinct_substrings_reference(&b), 15);
        assert_eq!(distinct_substrings_reference(&[1, 1, 1]), 3);
        assert_eq!(distinct_substrings_reference(&[1, 2]), 3);
        assert_eq!(longest_k_reference(&b, 2), 3);
        assert_eq!(longest_k_reference(&b, 3), 1);
    }

    #[test]
    fn nsv_psv_banana() {
        let sa = vec![7, 6, 4, 2, 1, 5, 3];
        assert_eq!(nsv(&sa, 4), 5);
        assert_eq!(psv(&sa, 4), 0);
        assert_eq!(nsv(&sa, 5), 0);
        assert_eq!(psv(&sa, 5), 0);
    }

    #[test]
    fn cross_rank_toy() {
        // S = "ba" + s1, S' = "ab" + s2 with s2 < s1 < a < b
        let s = vec![3, 2, 1];
        let sp = vec![2, 3, 0];
        // rotations of S in order: [1,3,2] [2,1,3] [3,2,1]
        // rotations of S': [0,2,3] [2,3,0] [3,0,2]
        assert_eq!(cross_ranks(&s, &sp), vec![1, 1, 3]);
    }
}
