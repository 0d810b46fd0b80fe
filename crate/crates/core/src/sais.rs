//! Suffix array construction by induced sorting (SA-IS), plus a plain
//! comparison-sort backend that shares its interface.
//!
//! Both return 0-based suffix arrays of the input sequence.

/// Which suffix-sorting routine the base case of the BWT construction uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SaBackend {
    #[default]
    InducedSorting,
    ComparisonSort,
}

/// Sorts suffixes of `s` (values at most `upper`).
pub fn sa_is(s: &[usize], upper: usize) -> Vec<usize> {
    let n = s.len();
    match n {
        0 => return vec![],
        1 => return vec![0],
        2 => return if s[0] < s[1] { vec![0, 1] } else { vec![1, 0] },
        _ => {}
    }
    let mut ls = vec![false; n];
    for i in (0..n - 1).rev() {
        ls[i] = if s[i] == s[i + 1] { ls[i + 1] } else { s[i] < s[i + 1] };
    }
    let mut sum_l = vec![0usize; upper + 2];
    let mut sum_s = vec![0usize; upper + 2];
    for i in 0..n {
        if !ls[i] {
            sum_s[s[i]] += 1;
        } else {
            sum_l[s[i] + 1] += 1;
        }
    }
    for i in 0..=upper {
        sum_s[i] += sum_l[i];
        if i < upper {
            sum_l[i + 1] += sum_s[i];
        }
    }

    let mut lms_map = vec![usize::MAX; n + 1];
    let mut lms = Vec::new();
    for i in 1..n {
        if !ls[i - 1] && ls[i] {
            lms_map[i] = lms.len();
            lms.push(i);
        }
    }
    let m = lms.len();
    let mut sa = vec![usize::MAX; n];
    let ctx = Ctx {
        s,
        ls: &ls,
        sum_l: &sum_l,
        sum_s: &sum_s,
    };
    ctx.induce(&mut sa, &lms);

    if m > 0 {
        let mut sorted_lms: Vec<usize> = sa.iter().copied().filter(|&v| lms_map[v] != usize::MAX).collect();
        let mut rec_s = vec![0usize; m];
        let mut rec_upper = 0;
        rec_s[lms_map[sorted_lms[0]]] = 0;
        for i in 1..m {
            let (mut l, mut r) = (sorted_lms[i - 1], sorted_lms[i]);
            let end_l = if lms_map[l] + 1 < m { lms[lms_map[l] + 1] } else { n };
            let end_r = if lms_map[r] + 1 < m { lms[lms_map[r] + 1] } else { n };
            let mut same = true;
            if end_l - l != end_r - r {
                same = false;
            } else {
                while l < end_l && s[l] == s[r] {
                    l += 1;
                    r += 1;
                }
                if l == n || s[l] != s[r] {
                    same = false;
                }
            }
            if !same {
                rec_upper += 1;
            }
            rec_s[lms_map[sorted_lms[i]]] = rec_upper;
        }
        let rec_sa = sa_is(&rec_s, rec_upper);
        for (slot, &x) in sorted_lms.iter_mut().zip(&rec_sa) {
            *slot = lms[x];
        }
        ctx.induce(&mut sa, &sorted_lms);
    }
    sa
}

struct Ctx<'a> {
    s: &'a [usize],
    ls: &'a [bool],
    sum_l: &'a [usize],
    sum_s: &'a [usize],
}

impl Ctx<'_> {
    fn induce(&self, sa: &mut [usize], lms: &[usize]) {
        let (s, ls, n) = (self.s, self.ls, self.s.len());
        sa.fill(usize::MAX);
        let mut buf = self.sum_s.to_vec();
        for &d in lms {
            if d == n {
                continue;
            }
            sa[buf[s[d]]] = d;
            buf[s[d]] += 1;
        }
        buf.copy_from_slice(self.sum_l);
        sa[buf[s[n - 1]]] = n - 1;
        buf[s[n - 1]] += 1;
        for i in 0..n {
            let v = sa[i];
            if v != usize::MAX && v >= 1 && !ls[v - 1] {
                sa[buf[s[v - 1]]] = v - 1;
                buf[s[v - 1]] += 1;
            }
        }
        buf.copy_from_slice(self.sum_l);
        for i in (0..n).rev() {
            let v = sa[i];
            if v != usize::MAX && v >= 1 && ls[v - 1] {
                buf[s[v - 1] + 1] -= 1;
                sa[buf[s[v - 1] + 1]] = v - 1;
            }
        }
    }
}

/// Sorts suffixes by direct comparison.
pub fn comparison_sa<T: Ord>(s: &[T]) -> Vec<usize> {
    let mut sa: Vec<usize> = (0..s.len()).collect();
    sa.sort_by(|&a, &b| s[a..].cmp(&s[b..]));
    sa
}

/// Maps arbitrary codes onto `0..k` preserving order; returns the ranks and
/// the largest rank.
pub fn rank_reduce(codes: &[u64]) -> (Vec<usize>, usize) {
    let mut distinct = codes.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let ranks = codes
        .iter()
        .map(|c| distinct.binary_search(c).unwrap())
        .collect();
    (ranks, distinct.len().saturating_sub(1))
}

/// Suffix array of `codes` with the chosen backend.
pub fn suffix_array(codes: &[u64], backend: SaBackend) -> Vec<usize> {
    match backend {
        SaBackend::InducedSorting => {
            let (ranks, upper) = rank_reduce(codes);
            sa_is(&ranks, upper)
        }
        SaBackend::ComparisonSort => comparison_sa(codes),
    }
}
