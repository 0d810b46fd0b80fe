//! Acceptance suite. Each test prints one `criterion N: PASS|FAIL` line with
//! the measured figures; run with `--nocapture` to see them.

use std::time::{Duration, Instant};

use rlindex::bwt_builder::{build_bwt, BuildConfig};
use rlindex::corpus::{self, RepeatSpec};
use rlindex::index::{IndexConfig, TextIndex};
use rlindex::lz77::{self, NsvPsvSupport, Phrase};
use rlindex::plcp::{build_irreducible, PlcpSucc};
use rlindex::rlcsa::{Rlcsa, ShortcutEngine};
use rlindex::sa_isa_support::SaAccess;
use rlindex::tau_index::tau_run_starts;
use rlindex::{lyndon, oracle, textbook, PackedText};

const SIGMAS: [u64; 4] = [2, 4, 26, 256];

fn report(id: u32, pass: bool, detail: &str) {
    println!("criterion {id}: {} {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {id} failed: {detail}");
}

fn text_of(symbols: &[u64]) -> PackedText {
    PackedText::from_symbols(symbols, 1).unwrap()
}

fn bytes(b: &[u8]) -> Vec<u64> {
    b.iter().map(|&x| x as u64).collect()
}

/// 500 seeded random texts, Fibonacci words of orders 0..=20 and mutated
/// repeats.
fn corpora() -> Vec<(String, Vec<u64>)> {
    let mut out = Vec::new();
    for seed in 0..500u64 {
        let sigma = SIGMAS[seed as usize % 4];
        let n = 1 + (corpus::random_symbols(1, 2000, 10_000 + seed)[0] as usize);
        out.push((format!("random s={seed} σ={sigma} n={n}"), corpus::random_symbols(n, sigma, seed)));
    }
    for order in 0..=20 {
        out.push((format!("fib {order}"), bytes(&corpus::fibonacci(order))));
    }
    for (k, &(block, copies, rate)) in [
        (10, 50, 0.0),
        (50, 20, 0.01),
        (100, 10, 0.001),
        (200, 10, 0.01),
        (300, 5, 0.05),
        (64, 30, 0.002),
    ]
    .iter()
    .enumerate()
    {
        let spec = RepeatSpec {
            block,
            copies,
            mut_rate: rate,
            seed: 100 + k as u64,
            ..Default::default()
        };
        out.push((format!("repeat {block}x{copies} ε={rate}"), bytes(&corpus::repeat(&spec))));
    }
    out
}

#[test]
fn criterion_1_lz77_example() {
    let start = Instant::now();
    let t = PackedText::from_bytes(b"zzzzzipzip", 1).unwrap();
    let idx = TextIndex::build(&t, &IndexConfig::default()).unwrap().0;
    let engine = ShortcutEngine::build(&idx, rlindex::default_tau(idx.len())).unwrap();
    let support = NsvPsvSupport::build(&idx, &idx, &engine, rlindex::default_tau(idx.len()), false).unwrap();
    let parsing = lz77::parse(&idx, &support).unwrap();
    let elapsed = start.elapsed();
    let expect = vec![
        Phrase::Literal(b'z' as u64),
        Phrase::Copy { source: 1, len: 4 },
        Phrase::Literal(b'i' as u64),
        Phrase::Literal(b'p' as u64),
        Phrase::Copy { source: 5, len: 3 },
    ];
    let shown: Vec<String> = parsing
        .phrases
        .iter()
        .map(|p| match *p {
            Phrase::Literal(c) => format!("({},0)", c as u8 as char),
            Phrase::Copy { source, len } => format!("({source},{len})"),
        })
        .collect();
    report(
        1,
        parsing.phrases == expect && elapsed < Duration::from_secs(1),
        &format!("parsing {} in {:?} (limit 1 s)", shown.join(","), elapsed),
    );
}

#[test]
fn criterion_2_bwt_matches_oracle() {
    let start = Instant::now();
    let all = corpora();
    let mut bad = Vec::new();
    for (name, sym) in &all {
        let t = text_of(sym);
        let (bwt, _) = build_bwt(&t, &BuildConfig::default()).unwrap();
        if bwt.decompress() != oracle::rotation_bwt(&t.codes()) {
            bad.push(name.clone());
        }
    }
    let elapsed = start.elapsed();
    report(
        2,
        bad.is_empty() && elapsed < Duration::from_secs(300),
        &format!("{} corpora, mismatches {:?}, {:?} (limit 300 s)", all.len(), bad, elapsed),
    );
}

#[test]
fn criterion_3_queries_match_oracle() {
    let mut failures: Vec<String> = Vec::new();
    let mut checked = 0u64;
    let mut fail = |what: String| {
        if failures.len() < 20 {
            failures.push(what);
        }
    };
    for seed in 0..100u64 {
        let sigma = SIGMAS[seed as usize % 4];
        let n = 1 + corpus::random_symbols(1, 999, 20_000 + seed)[0] as usize;
        let mut sym = corpus::random_symbols(n, sigma, 30_000 + seed);
        if seed % 2 == 1 {
            // every other text is a short unit repeated with point mutations
            let unit = 1 + n / 20;
            for j in unit..n {
                sym[j] = sym[j - unit];
            }
            for (k, v) in corpus::random_symbols(3, n as u64, seed).into_iter().enumerate() {
                sym[v as usize] = k as u64 % sigma;
            }
        }
        let t = text_of(&sym);
        let codes = t.codes();
        let o = oracle::build_tables(&codes);
        let nn = codes.len();
        for tau in [1usize, 2, 4, 16] {
            let cfg = IndexConfig {
                tau1: Some(tau),
                tau2: Some(tau),
                ..Default::default()
            };
            let idx = TextIndex::build(&t, &cfg).unwrap().0;
            let b = idx.bwt();
            let syms: Vec<u64> = (0..t.sigma()).collect();
            for &c in &syms {
                let mut cnt = 0;
                for i in 0..=nn {
                    if i > 0 && o.bwt[i - 1] == c {
                        cnt += 1;
                        if b.select(c, cnt).ok() != Some(i) {
                            fail(format!("seed {seed} τ={tau} select({c},{cnt})"));
                        }
                    }
                    if b.rank(c, i) != cnt {
                        fail(format!("seed {seed} τ={tau} rank({c},{i})"));
                    }
                }
                checked += nn as u64;
            }
            for i in 1..=nn {
                if b.lf(i) != o.lf[i - 1] || b.psi(i) != o.psi[i - 1] {
                    fail(format!("seed {seed} τ={tau} lf/psi({i})"));
                }
                if idx.sa(i) != o.sa[i - 1] || idx.isa(i) != o.isa[i - 1] {
                    fail(format!("seed {seed} τ={tau} sa/isa({i})"));
                }
            }
            let engine = ShortcutEngine::build(&idx, tau).unwrap();
            let support = NsvPsvSupport::build(&idx, &idx, &engine, tau, false).unwrap();
            for i in 1..=nn {
                if support.nsv(i).unwrap() != oracle::nsv(&o.sa, i) || support.psv(i).unwrap() != oracle::psv(&o.sa, i) {
                    fail(format!("seed {seed} τ={tau} nsv/psv({i})"));
                }
            }
            if tau >= 2 {
                let cs = Rlcsa::build(&idx, &engine, tau).unwrap();
                for p in 1..=nn {
                    if cs.sa_at(p).unwrap() != o.sa[p - 1] {
                        fail(format!("seed {seed} τ={tau} sa_at({p})"));
                    }
                    for len in [1, 2, 7, 33, nn + 1 - p] {
                        if p + len <= nn + 1 && cs.sa_segment(p, len).unwrap() != o.sa[p - 1..p - 1 + len] {
                            fail(format!("seed {seed} τ={tau} sa_segment({p},{len})"));
                        }
                    }
                }
            }
            for j1 in 1..=nn {
                for j2 in j1..=nn {
                    if idx.lce(j1, j2) != oracle::lce(&codes, j1, j2) {
                        fail(format!("seed {seed} τ={tau} lce({j1},{j2})"));
                    }
                }
            }
            checked += (nn * (nn + 1) / 2 + 8 * nn) as u64;
        }
    }
    report(
        3,
        failures.is_empty(),
        &format!("100 texts × τ∈{{1,2,4,16}}, {checked} query checks, mismatches {failures:?} (tolerance 0)"),
    );
}

#[test]
fn criterion_4_plcp() {
    let mut bad = Vec::new();
    let mut worst = 0f64;
    for (name, sym) in &corpora() {
        let t = text_of(sym);
        let idx = TextIndex::build(&t, &IndexConfig::default()).unwrap().0;
        let list = build_irreducible(&idx);
        let succ = PlcpSucc::from_irreducible(&list).unwrap();
        let o = oracle::build_tables(&t.codes());
        let n = idx.len() as f64;
        let bound = n * n.log2();
        worst = worst.max(list.sum() as f64 / bound);
        if succ.decode() != o.plcp || list.sum() as f64 > bound {
            bad.push(name.clone());
        }
    }
    report(
        4,
        bad.is_empty(),
        &format!("PLCP mismatches or sum > n·log2 n: {bad:?}; max sum/(n·log2 n) = {worst:.3} (limit 1)"),
    );
}

#[test]
fn criterion_5_structural_bounds() {
    let mut bad = Vec::new();
    let mut max_ratio = 0f64;
    for (name, sym) in &corpora() {
        let t = text_of(sym);
        let cfg = IndexConfig {
            build: BuildConfig {
                record_rounds: false,
                ..Default::default()
            },
            ..Default::default()
        };
        let (idx, rep) = TextIndex::build(&t, &cfg).unwrap();
        let r = idx.runs();
        for tau in [1usize, 2, 4, 16] {
            if tau_run_starts(idx.bwt(), tau).unwrap().len() > r * tau {
                bad.push(format!("{name}: |R_{tau}|"));
            }
        }
        let pr = rep.padded_runs();
        for round in &rep.rounds {
            if round.runs > pr << round.level {
                bad.push(format!("{name}: r_{}", round.level));
            }
        }
        let tau = rlindex::default_tau(idx.len());
        let engine = ShortcutEngine::build(&idx, tau).unwrap();
        let support = NsvPsvSupport::build(&idx, &idx, &engine, tau, false).unwrap();
        let z = lz77::parse(&idx, &support).unwrap().z();
        let m = lyndon::factorize(&idx).unwrap().m();
        max_ratio = max_ratio.max(m as f64 / z as f64);
        if m >= 2 * z {
            bad.push(format!("{name}: m={m} z={z}"));
        }
    }
    report(
        5,
        bad.is_empty(),
        &format!("violations {bad:?}; max m/z = {max_ratio:.3} (limit < 2)"),
    );
}

#[test]
fn criterion_6_lyndon_and_textbook() {
    let mut bad = Vec::new();
    for (name, sym) in &corpora() {
        let t = text_of(sym);
        let idx = TextIndex::build(&t, &IndexConfig::default()).unwrap().0;
        let codes = t.codes();
        let payload = &codes[..codes.len() - 1];
        if lyndon::factorize(&idx).unwrap().to_tuples() != oracle::lyndon_duval(payload) {
            bad.push(format!("{name}: lyndon"));
        }
    }
    let mut small = Vec::new();
    for seed in 0..60u64 {
        let sigma = SIGMAS[seed as usize % 4].min(8);
        let n = 1 + corpus::random_symbols(1, 500, 40_000 + seed)[0] as usize;
        let mut sym = corpus::random_symbols(n, sigma, 50_000 + seed);
        if seed % 3 == 0 {
            let unit = 1 + n / 10;
            for j in unit..n {
                sym[j] = sym[j - unit];
            }
        }
        small.push((format!("random s={seed} n={n}"), sym));
    }
    small.push(("banana".into(), bytes(b"banana")));
    small.push(("fib 12".into(), bytes(&corpus::fibonacci(12))));
    for (name, sym) in &small {
        let t = text_of(sym);
        let idx = TextIndex::build(&t, &IndexConfig::default()).unwrap().0;
        let codes = t.codes();
        let payload = &codes[..codes.len() - 1];
        let list = build_irreducible(&idx);
        if payload.len() <= 300 && textbook::distinct_substrings(&list) != oracle::distinct_substrings_reference(payload) {
            bad.push(format!("{name}: distinct"));
        }
        let plcp = PlcpSucc::from_irreducible(&list).unwrap();
        let tau = rlindex::default_tau(idx.len());
        let engine = ShortcutEngine::build(&idx, tau).unwrap();
        for k in 2..=4usize.min(payload.len()) {
            let got = textbook::longest_k_occurring(&idx, &idx, &engine, &plcp, k, tau, false).unwrap();
            if got != oracle::longest_k_reference(payload, k) {
                bad.push(format!("{name}: longest k={k}"));
            }
            if k == 2 && got != list.max_value() {
                bad.push(format!("{name}: k=2 vs max irreducible"));
            }
        }
    }
    report(
        6,
        bad.is_empty(),
        &format!("lyndon on {} corpora, distinct/longest-k on {} texts; mismatches {bad:?}", corpora().len(), small.len()),
    );
}

fn repeat_corpus() -> Vec<u8> {
    corpus::repeat(&RepeatSpec {
        block: 1000,
        copies: 1000,
        mut_rate: 1e-3,
        seed: 2024,
        ..Default::default()
    })
}

#[test]
fn criterion_7_compression() {
    let start = Instant::now();
    let body = repeat_corpus();
    let t = PackedText::from_bytes(&body, 1).unwrap();
    let idx = TextIndex::build(&t, &IndexConfig::default()).unwrap().0;
    let n = idx.len();
    let r = idx.runs();
    let engine = ShortcutEngine::build(&idx, rlindex::default_tau(n)).unwrap();
    let cs = Rlcsa::build(&idx, &engine, 4).unwrap();
    let size = cs.serialized_size();
    // spot check against the sampled SA
    let spot = (1..=n).step_by(997).all(|p| cs.sa_at(p).unwrap() == idx.sa(p));
    let elapsed = start.elapsed();
    report(
        7,
        r * 50 <= n && size < 8 * n && spot && elapsed < Duration::from_secs(120),
        &format!(
            "n={n} r={r} (limit n/50={}), RLCSA τ=4 {size} bytes (limit 8n={}), spot checks {}, {:?} (limit 120 s)",
            n / 50,
            8 * n,
            if spot { "ok" } else { "FAILED" },
            elapsed
        ),
    );
}

#[test]
fn criterion_8_tradeoff() {
    let body = corpus::repeat(&RepeatSpec {
        block: 1000,
        copies: 100,
        mut_rate: 1e-3,
        seed: 8,
        ..Default::default()
    });
    let t = PackedText::from_bytes(&body, 1).unwrap();
    let idx = TextIndex::build(&t, &IndexConfig::default()).unwrap().0;
    let n = idx.len();
    let engine = ShortcutEngine::build(&idx, rlindex::default_tau(n)).unwrap();
    let mut rows = Vec::new();
    for tau in [2usize, 4, 16] {
        let cs = Rlcsa::build(&idx, &engine, tau).unwrap();
        let mut total = 0usize;
        let mut max = 0usize;
        for p in 1..=n {
            let (v, d) = cs.sa_at_with_depth(p).unwrap();
            assert_eq!(v, idx.sa(p));
            total += d;
            max = max.max(d);
        }
        rows.push((tau, cs.serialized_size(), total as f64 / n as f64, max));
    }
    let pass = rows[2].1 >= rows[1].1 && rows[1].1 >= rows[0].1 && rows[2].2 <= rows[0].2 && rows[2].3 <= rows[0].3;
    let shown: Vec<String> = rows
        .iter()
        .map(|(t, s, m, x)| format!("τ={t}: {s} bytes, depth mean {m:.2} max {x}"))
        .collect();
    report(8, pass, &format!("n={n} r={}; {}", idx.runs(), shown.join("; ")));
}
