//! Deterministic test corpora: Fibonacci words, mutated repeats and uniform
//! random texts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DNA: &[u8] = b"ACGT";

/// `F_0 = b`, `F_1 = a`, `F_k = F_{k-1} F_{k-2}`.
pub fn fibonacci(order: usize) -> Vec<u8> {
    let (mut prev, mut cur) = (b"b".to_vec(), b"a".to_vec());
    if order == 0 {
        return prev;
    }
    for _ in 1..order {
        let next = [cur.as_slice(), prev.as_slice()].concat();
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

#[derive(Debug, Clone)]
pub struct RepeatSpec<'a> {
    pub block: usize,
    pub copies: usize,
    /// Probability that a copied symbol is replaced by a different one.
    pub mut_rate: f64,
    pub seed: u64,
    pub alphabet: &'a [u8],
}

impl Default for RepeatSpec<'_> {
    fn default() -> Self {
        RepeatSpec {
            block: 1000,
            copies: 10,
            mut_rate: 0.001,
            seed: 0,
            alphabet: DNA,
        }
    }
}

/// A random block followed by `copies - 1` mutated copies of it.
pub fn repeat(spec: &RepeatSpec) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let sigma = spec.alphabet.len();
    let block: Vec<u8> = (0..spec.block).map(|_| spec.alphabet[rng.gen_range(0..sigma)]).collect();
    let mut out = Vec::with_capacity(spec.block * spec.copies);
    for c in 0..spec.copies {
        for &b in &block {
            if c > 0 && sigma > 1 && rng.gen_bool(spec.mut_rate.clamp(0.0, 1.0)) {
                let mut x = spec.alphabet[rng.gen_range(0..sigma)];
                while x == b {
                    x = spec.alphabet[rng.gen_range(0..sigma)];
                }
                out.push(x);
            } else {
                out.push(b);
            }
        }
    }
    out
}

/// `n` symbols drawn uniformly from `0..sigma`.
pub fn random_symbols(n: usize, sigma: u64, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen_range(0..sigma)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_words() {
        assert_eq!(fibonacci(0), b"b");
        assert_eq!(fibonacci(1), b"a");
        assert_eq!(fibonacci(2), b"ab");
        assert_eq!(fibonacci(5), b"abaababa");
        assert_eq!(fibonacci(20).len(), 10946);
    }

    #[test]
    fn repeat_is_deterministic() {
        let spec = RepeatSpec {
            block: 50,
            copies: 4,
            mut_rate: 0.1,
            seed: 7,
            alphabet: DNA,
        };
        let a = repeat(&spec);
        assert_eq!(a.len(), 200);
        assert_eq!(a, repeat(&spec));
        assert!(a.iter().all(|b| DNA.contains(b)));
        let exact = repeat(&RepeatSpec { mut_rate: 0.0, ..spec });
        assert_eq!(exact[..50], exact[150..]);
        assert_eq!(random_symbols(10, 4, 1), random_symbols(10, 4, 1));
    }
}
