//! Round-based BWT construction working on supersymbols.
//!
//! The padded text is grouped into blocks of `2^k` symbols and its BWT built
//! by suffix sorting. Each round then halves the block width: from the BWT of
//! `T_{i+1}` (blocks of `2d` symbols) it induces the BWT of the rotations
//! starting at even block offsets and merges the two into the BWT of `T_i`,
//! touching runs rather than individual rows wherever possible.

use crate::ceil_log2;
use crate::error::{Error, Result};
use crate::oracle;
use crate::rlbwt::{IndexedRlbwt, Rlbwt, RunBuilder};
use crate::sais::{self, SaBackend};
use crate::tau_index::SuffixRankSupport;
use crate::text_core::PackedText;

/// Sampling rate of the suffix-rank structures used by the merge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MergeTau {
    /// `cbrt(m / (r_o + r_e))`, clamped to `[1, ceil(log2 m)^2]`.
    #[default]
    Auto,
    /// `ceil(log2 m)^2`, capped at `m`.
    LogSquared,
    Fixed(usize),
}

#[derive(Debug, Clone, Default)]
pub struct BuildConfig {
    /// Forces the packing exponent `k` (blocks of `2^k` symbols).
    pub base_level: Option<u32>,
    pub merge_tau: MergeTau,
    pub backend: SaBackend,
    /// Keep every intermediate RLBWT in the report.
    pub record_rounds: bool,
}

/// Outcome of one level of the construction.
#[derive(Debug, Clone)]
pub struct RoundState {
    pub level: u32,
    /// Symbols per supersymbol, `2^level`.
    pub width: usize,
    pub runs: usize,
    /// Sampling rate used by the merge that produced this level.
    pub merge_tau: Option<usize>,
    pub bwt: Option<Rlbwt>,
}

#[derive(Debug, Clone)]
pub struct BuildReport {
    pub base_level: u32,
    pub sentinels: usize,
    pub padded_len: usize,
    /// Levels from `base_level` down to 0.
    pub rounds: Vec<RoundState>,
}

impl BuildReport {
    /// Runs in the BWT of the padded text.
    pub fn padded_runs(&self) -> usize {
        self.rounds.last().map_or(0, |r| r.runs)
    }
}

fn sentinels_for(len: usize, width: usize) -> usize {
    width - len % width
}

fn bits_for(sigma: u64) -> u32 {
    if sigma <= 1 {
        1
    } else {
        64 - (sigma - 1).leading_zeros()
    }
}

/// Largest `k` such that `2^k` symbols fit a word and `sigma'^(2^k) ≤ n'`,
/// where `p'` sentinels pad the payload to a multiple of `2^k`. Returns
/// `(k, p')`.
pub fn choose_base_level(payload_len: usize, payload_sigma: u64) -> (u32, usize) {
    for k in (0..=6u32).rev() {
        let w = 1usize << k;
        let p = sentinels_for(payload_len, w);
        let sigma = payload_sigma + p as u64;
        let n = (payload_len + p) as u128;
        if w as u32 * bits_for(sigma) > 64 {
            continue;
        }
        match (sigma as u128).checked_pow(w as u32) {
            Some(v) if v <= n => return (k, p),
            _ => {}
        }
    }
    (0, 1)
}

fn level_sigma(sigma: u64, width: usize) -> u64 {
    (sigma as u128)
        .checked_pow(width as u32)
        .map_or(u64::MAX, |v| v.min(u64::MAX as u128) as u64)
}

/// RLBWT of `T_k`, the padded text in blocks of `2^k` symbols.
pub fn base_case(padded: &PackedText, k: u32, backend: SaBackend) -> Result<Rlbwt> {
    let width = 1usize << k;
    let st = padded.regroup(width)?;
    let codes = st.codes();
    let n = codes.len();
    let sa = sais::suffix_array(codes, backend);
    let bwt: Vec<u64> = sa.iter().map(|&p| codes[(p + n - 1) % n]).collect();
    Rlbwt::from_bwt(&bwt, level_sigma(padded.sigma(), width))
}

/// BWT of `S_e` (pairs starting at even block offsets) from the BWT of `S_o`.
/// `half` is the number of distinct half-width codes.
pub fn induce_even(bo: &IndexedRlbwt, half: u64) -> Result<Rlbwt> {
    let runs = bo.bwt();
    if runs.is_empty() {
        return Err(Error::Malformed("empty RLBWT".into()));
    }
    let mut order: Vec<usize> = (0..runs.runs()).collect();
    order.sort_unstable_by_key(|&k| (runs.run_symbol(k) % half, runs.run_start(k)));
    let mut out = RunBuilder::new();
    for k in order {
        let major = runs.run_symbol(k) / half;
        let mut pos = bo.lf(runs.run_start(k));
        let mut remaining = runs.run_len(k);
        let mut q = runs.run_of(pos);
        while remaining > 0 {
            let take = (runs.run_end(q) + 1 - pos).min(remaining);
            out.push((runs.run_symbol(q) % half) * half + major, take);
            pos += take;
            remaining -= take;
            q += 1;
        }
    }
    Ok(out.finish(runs.sigma()))
}

/// Runs of the minor halves: `(last row, minor code)`.
fn minor_runs(bwt: &Rlbwt, half: u64) -> Vec<(usize, u64)> {
    let mut out: Vec<(usize, u64)> = Vec::new();
    for k in 0..bwt.runs() {
        let m = bwt.run_symbol(k) % half;
        match out.last_mut() {
            Some(last) if last.1 == m => last.0 = bwt.run_end(k),
            _ => out.push((bwt.run_end(k), m)),
        }
    }
    out
}

fn merge_tau(mode: MergeTau, m: usize, runs: usize) -> usize {
    let lg2 = (ceil_log2(m).max(1)).pow(2).min(m.max(1));
    match mode {
        MergeTau::Fixed(t) => t.clamp(1, m.max(1)),
        MergeTau::LogSquared => lg2,
        MergeTau::Auto => {
            let t = (m as f64 / runs.max(1) as f64).cbrt().round() as usize;
            t.clamp(1, lg2)
        }
    }
}

/// Interleaves the BWTs of `S_o` and `S_e` in rotation order, keeping the
/// minor half of every symbol. Returns the BWT of `T_i` and the τ used.
pub fn merge(
    bo: &IndexedRlbwt,
    o_last: u64,
    be: &IndexedRlbwt,
    e_last: u64,
    half: u64,
    mode: MergeTau,
) -> Result<(Rlbwt, usize)> {
    let m = bo.len();
    if be.len() != m || m == 0 {
        return Err(Error::Malformed(format!(
            "merge of BWTs with {} and {} rows",
            m,
            be.len()
        )));
    }
    let tau = merge_tau(mode, m, bo.runs() + be.runs());
    let to_e = SuffixRankSupport::build(bo, o_last, be, tau)?;
    let to_o = SuffixRankSupport::build(be, e_last, bo, tau)?;
    // e-rows before o-row a / o-rows before e-row b
    let f = |a: usize| to_e.rank(bo, be, a);
    let g = |b: usize| to_o.rank(be, bo, b);

    let ro = minor_runs(bo.bwt(), half);
    let re = minor_runs(be.bwt(), half);
    let (mut ia, mut ib) = (0, 0);
    let (mut a, mut b) = (1usize, 1usize);
    let mut out = RunBuilder::new();
    while a <= m || b <= m {
        while ia < ro.len() && ro[ia].0 < a {
            ia += 1;
        }
        while ib < re.len() && re[ib].0 < b {
            ib += 1;
        }
        if a > m {
            out.push(re[ib].1, re[ib].0 + 1 - b);
            b = re[ib].0 + 1;
            continue;
        }
        if b > m {
            out.push(ro[ia].1, ro[ia].0 + 1 - a);
            a = ro[ia].0 + 1;
            continue;
        }
        let (a2, mo) = ro[ia];
        let (b2, me) = re[ib];
        if mo == me {
            if a2 == m && b2 == m {
                out.push(mo, (m + 1 - a) + (m + 1 - b));
                a = m + 1;
                b = m + 1;
                continue;
            }
            let fa = if a2 < m { Some(f(a2 + 1)?) } else { None };
            match fa {
                Some(fa) if b2 == m || fa <= b2 => {
                    out.push(mo, (a2 + 1 - a) + (fa + 1 - b));
                    a = a2 + 1;
                    b = fa + 1;
                }
                _ => {
                    let gb = g(b2 + 1)?;
                    out.push(mo, (b2 + 1 - b) + (gb + 1 - a));
                    b = b2 + 1;
                    a = gb + 1;
                }
            }
        } else {
            let fa = f(a)?;
            if fa < b {
                let end = a2.min(g(b)?);
                out.push(mo, end + 1 - a);
                a = end + 1;
            } else {
                let end = b2.min(fa);
                out.push(me, end + 1 - b);
                b = end + 1;
            }
        }
    }
    Ok((out.finish(half), tau))
}

fn block_code(text: &PackedText, positions: impl Iterator<Item = usize>) -> u64 {
    let sigma = text.sigma();
    positions.fold(0u64, |acc, j| acc * sigma + text.get(j))
}

/// Removes the rows of all but the first padding rotation and maps codes back
/// to the single-sentinel alphabet.
fn strip_padding(bwt: &Rlbwt, pad: usize, payload_sigma: u64) -> Rlbwt {
    let mut out = RunBuilder::new();
    let p = pad as u64;
    for k in 0..bwt.runs() {
        let (s, e) = (bwt.run_start(k), bwt.run_end(k));
        let c = bwt.run_symbol(k);
        let mut len = e + 1 - s;
        // overlap with rows 2..=pad
        let lo = s.max(2);
        let hi = e.min(pad);
        if lo <= hi {
            len -= hi + 1 - lo;
        }
        let mapped = if c + 1 == p {
            0
        } else if c >= p {
            c - p + 1
        } else {
            debug_assert!(len == 0);
            continue;
        };
        out.push(mapped, len);
    }
    out.finish(payload_sigma + 1)
}

/// Builds the RLBWT of `text` (its payload followed by one sentinel).
pub fn build_bwt(text: &PackedText, cfg: &BuildConfig) -> Result<(Rlbwt, BuildReport)> {
    let len = text.payload_len();
    if len == 0 {
        return Err(Error::EmptyInput);
    }
    let (k, pad) = match cfg.base_level {
        Some(k) => {
            if k > 6 {
                return Err(Error::InvalidParameter(format!("base level {k} exceeds word width")));
            }
            (k, sentinels_for(len, 1 << k))
        }
        None => choose_base_level(len, text.payload_sigma()),
    };
    let padded = text.with_sentinels(pad)?;
    let n = padded.len();
    let sigma = padded.sigma();
    let mut rounds = Vec::new();
    let mut cur = base_case(&padded, k, cfg.backend)?;
    rounds.push(RoundState {
        level: k,
        width: 1 << k,
        runs: cur.runs(),
        merge_tau: None,
        bwt: cfg.record_rounds.then(|| cur.clone()),
    });
    for level in (0..k).rev() {
        let d = 1usize << level;
        let half = level_sigma(sigma, d);
        let bo = IndexedRlbwt::new(cur);
        let be = IndexedRlbwt::new(induce_even(&bo, half)?);
        let o_last = block_code(&padded, n - 2 * d + 1..=n);
        let e_last = block_code(&padded, (n - d + 1..=n).chain(1..=d));
        let (next, tau) = merge(&bo, o_last, &be, e_last, half, cfg.merge_tau)?;
        cur = next;
        rounds.push(RoundState {
            level,
            width: d,
            runs: cur.runs(),
            merge_tau: Some(tau),
            bwt: cfg.record_rounds.then(|| cur.clone()),
        });
    }
    let report = BuildReport {
        base_level: k,
        sentinels: pad,
        padded_len: n,
        rounds,
    };
    let out = if pad == 1 {
        cur
    } else {
        strip_padding(&cur, pad, text.payload_sigma())
    };
    Ok((out, report))
}

/// Oracle BWT of the padded text at level `level`, for checking rounds.
pub fn oracle_level_bwt(text: &PackedText, report: &BuildReport, level: u32) -> Result<Vec<u64>> {
    let padded = text.with_sentinels(report.sentinels)?;
    let st = padded.regroup(1 << level)?;
    Ok(oracle::rotation_bwt(st.codes()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn single_sentinel_oracle(text: &PackedText) -> Vec<u64> {
        oracle::rotation_bwt(&text.codes())
    }

    fn check_all_levels(text: &PackedText, cfg: &BuildConfig) {
        let cfg = BuildConfig {
            record_rounds: true,
            ..cfg.clone()
        };
        let (bwt, rep) = match build_bwt(text, &cfg) {
            // a forced base level whose supersymbols do not fit a word
            Err(Error::CodeOverflow(_)) if cfg.base_level.is_some() => return,
            other => other.unwrap(),
        };
        assert_eq!(bwt.decompress(), single_sentinel_oracle(text));
        let r = rep.padded_runs();
        for round in &rep.rounds {
            let expect = oracle_level_bwt(text, &rep, round.level).unwrap();
            assert_eq!(round.bwt.as_ref().unwrap().decompress(), expect, "level {}", round.level);
            assert!(round.runs <= r << round.level);
        }
    }

    #[test]
    fn fibonacci_runs() {
        // with a sentinel: 4 runs at odd orders, order - 1 at even orders
        for order in 5..=20 {
            let t = PackedText::from_bytes(&crate::corpus::fibonacci(order), 1).unwrap();
            let (bwt, _) = build_bwt(&t, &BuildConfig::default()).unwrap();
            let expect = oracle::count_runs(&single_sentinel_oracle(&t));
            assert_eq!(bwt.runs(), expect, "order {order}");
            assert_eq!(expect, if order % 2 == 1 { 4 } else { order - 1 });
        }
    }

    #[test]
    fn banana_end_to_end() {
        let t = PackedText::from_bytes(b"banana", 1).unwrap();
        let (bwt, _) = build_bwt(&t, &BuildConfig::default()).unwrap();
        assert_eq!(bwt.decompress(), vec![1, 3, 3, 2, 0, 1, 1]);
        for k in 0..=3 {
            check_all_levels(
                &t,
                &BuildConfig {
                    base_level: Some(k),
                    ..Default::default()
                },
            );
        }
    }

    #[test]
    fn base_level_choice() {
        // sigma' = 4 + p', 2^k blocks with sigma'^(2^k) <= n'
        assert_eq!(choose_base_level(1_024_000, 4), (2, 4));
        assert_eq!(choose_base_level(1, 1), (0, 1));
        assert_eq!(choose_base_level(6, 3), (0, 1));
    }

    #[test]
    fn base_case_banana_padded() {
        let t = PackedText::from_bytes(b"banana", 2).unwrap();
        let got = base_case(&t, 1, SaBackend::InducedSorting).unwrap();
        let st = t.regroup(2).unwrap();
        assert_eq!(got.decompress(), oracle::rotation_bwt(st.codes()));
        let alt = base_case(&t, 1, SaBackend::ComparisonSort).unwrap();
        assert_eq!(alt, got);
    }

    #[test]
    fn induce_small() {
        // "aabb" + 4 sentinels, widths 2 -> 1 ... checked through all rounds
        let t = PackedText::from_bytes(b"aabb", 1).unwrap();
        check_all_levels(&t, &BuildConfig { base_level: Some(2), ..Default::default() });
        let per = PackedText::from_bytes(b"abababababababab", 1).unwrap();
        check_all_levels(&per, &BuildConfig { base_level: Some(3), ..Default::default() });
    }

    #[test]
    fn induce_even_matches_oracle() {
        let t = PackedText::from_bytes(b"aabb", 4).unwrap();
        let s = t.regroup(2).unwrap();
        let half = t.sigma();
        let bo = IndexedRlbwt::new(Rlbwt::from_bwt(&oracle::rotation_bwt(s.codes()), u64::MAX).unwrap());
        let got = induce_even(&bo, half).unwrap();
        let codes = t.codes();
        let n = codes.len();
        let se: Vec<u64> = (0..n / 2)
            .map(|b| codes[(2 * b + 1) % n] * half + codes[(2 * b + 2) % n])
            .collect();
        assert_eq!(got.decompress(), oracle::rotation_bwt(&se));
    }

    #[test]
    fn unary_texts() {
        for len in 1..40 {
            let t = PackedText::from_bytes(&vec![b'a'; len], 1).unwrap();
            let (bwt, _) = build_bwt(&t, &BuildConfig::default()).unwrap();
            assert_eq!(bwt.decompress(), single_sentinel_oracle(&t));
            assert!(bwt.runs() <= 2);
            check_all_levels(&t, &BuildConfig { base_level: Some(3), ..Default::default() });
        }
    }

    #[test]
    fn merge_tau_modes() {
        let t = PackedText::from_bytes(b"mississippi_mississippi", 1).unwrap();
        for mode in [MergeTau::Auto, MergeTau::LogSquared, MergeTau::Fixed(1), MergeTau::Fixed(3)] {
            check_all_levels(&t, &BuildConfig { base_level: Some(3), merge_tau: mode, ..Default::default() });
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn random_texts_all_levels(body in proptest::collection::vec(0u8..4, 1..300), k in 0u32..5) {
            let t = PackedText::from_bytes(&body, 1).unwrap();
            check_all_levels(&t, &BuildConfig { base_level: Some(k), ..Default::default() });
        }

        #[test]
        fn random_texts_default(body in proptest::collection::vec(any::<u8>(), 1..400)) {
            let t = PackedText::from_bytes(&body, 1).unwrap();
            let (bwt, _) = build_bwt(&t, &BuildConfig::default()).unwrap();
            prop_assert_eq!(bwt.decompress(), single_sentinel_oracle(&t));
        }
    }
}
