//! Lyndon factorization of the text without its sentinel.
//!
//! A factor starts at `j` exactly when the suffix at `j` is smaller than every
//! suffix starting before it. Rows `ISA[1], ISA[2], …` are visited with Ψ, so
//! each candidate costs one comparison against the current minimum. Equal
//! consecutive factors are merged with one LCE query each.

use crate::error::Result;
use crate::index::TextIndex;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LyndonRun {
    pub start: usize,
    pub len: usize,
    pub exp: usize,
}

impl LyndonRun {
    pub fn as_tuple(&self) -> (usize, usize, usize) {
        (self.start, self.len, self.exp)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LyndonFactorization {
    pub runs: Vec<LyndonRun>,
}

impl LyndonFactorization {
    /// Number of runs `m`.
    pub fn m(&self) -> usize {
        self.runs.len()
    }

    pub fn to_tuples(&self) -> Vec<(usize, usize, usize)> {
        self.runs.iter().map(LyndonRun::as_tuple).collect()
    }

    /// `<start> <len> <exp>` per line.
    pub fn to_text(&self) -> String {
        self.runs
            .iter()
            .map(|r| format!("{} {} {}\n", r.start, r.len, r.exp))
            .collect()
    }
}

pub fn factorize(idx: &TextIndex) -> Result<LyndonFactorization> {
    let n = idx.len();
    let bwt = idx.bwt();
    let mut starts = Vec::new();
    let mut row = idx.try_isa(1)?;
    let mut best = usize::MAX;
    for j in 1..n {
        if row < best {
            best = row;
            starts.push(j);
        }
        row = bwt.psi(row);
    }
    starts.push(n);
    let mut runs: Vec<LyndonRun> = Vec::new();
    for w in starts.windows(2) {
        let (s, len) = (w[0], w[1] - w[0]);
        match runs.last_mut() {
            Some(last) if last.len == len && idx.lce(last.start, s) >= len => last.exp += 1,
            _ => runs.push(LyndonRun { start: s, len, exp: 1 }),
        }
    }
    Ok(LyndonFactorization { runs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::index::IndexConfig;
    use crate::oracle;
    use crate::text_core::PackedText;
    use proptest::prelude::*;

    fn run(body: &[u8]) -> Vec<(usize, usize, usize)> {
        let t = PackedText::from_bytes(body, 1).unwrap();
        let idx = TextIndex::build(&t, &IndexConfig::default()).unwrap().0;
        factorize(&idx).unwrap().to_tuples()
    }

    #[test]
    fn examples() {
        assert_eq!(run(b"banana"), vec![(1, 1, 1), (2, 2, 2), (6, 1, 1)]);
        assert_eq!(run(b"aaaa"), vec![(1, 1, 4)]);
        let fib = corpus::fibonacci(15);
        assert_eq!(run(&fib), oracle::lyndon_duval(&fib.iter().map(|&b| b as u64).collect::<Vec<_>>()));
    }

    proptest! {
        #[test]
        fn matches_duval(body in proptest::collection::vec(b'a'..b'd', 1..400)) {
            let t: Vec<u64> = body.iter().map(|&b| b as u64).collect();
            prop_assert_eq!(run(&body), oracle::lyndon_duval(&t));
        }
    }
}
