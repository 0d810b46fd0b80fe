//! Plain bitvector with sampled select over set bits.

const SELECT_SAMPLE: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
    ones: usize,
    /// Word holding the `(k * SELECT_SAMPLE + 1)`-th set bit, and the number
    /// of set bits before that word.
    samples: Vec<(usize, usize)>,
}

impl BitVec {
    pub fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(len.div_ceil(64), 0);
        if !len.is_multiple_of(64) {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << (len % 64)) - 1;
            }
        }
        let mut samples = Vec::new();
        let mut ones = 0;
        for (w, &word) in words.iter().enumerate() {
            let c = word.count_ones() as usize;
            while samples.len() * SELECT_SAMPLE < ones + c {
                samples.push((w, ones));
            }
            ones += c;
        }
        BitVec {
            len,
            words,
            ones,
            samples,
        }
    }

    /// Builds from 0-based set positions.
    pub fn from_positions(len: usize, positions: impl IntoIterator<Item = usize>) -> Self {
        let mut words = vec![0u64; len.div_ceil(64)];
        for p in positions {
            words[p / 64] |= 1 << (p % 64);
        }
        Self::from_words(len, words)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn count_ones(&self) -> usize {
        self.ones
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, p: usize) -> bool {
        self.words[p / 64] >> (p % 64) & 1 == 1
    }

    /// 0-based position of the `k`-th set bit (1-based `k`).
    pub fn select1(&self, k: usize) -> Option<usize> {
        if k == 0 || k > self.ones {
            return None;
        }
        let (mut w, mut before) = self.samples[(k - 1) / SELECT_SAMPLE];
        loop {
            let c = self.words[w].count_ones() as usize;
            if before + c >= k {
                let mut word = self.words[w];
                for _ in 0..k - before - 1 {
                    word &= word - 1;
                }
                return Some(w * 64 + word.trailing_zeros() as usize);
            }
            before += c;
            w += 1;
        }
    }

    /// Iterator over 0-based set positions.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut x = word;
            std::iter::from_fn(move || {
                if x == 0 {
                    None
                } else {
                    let t = x.trailing_zeros() as usize;
                    x &= x - 1;
                    Some(w * 64 + t)
                }
            })
        })
    }
}
