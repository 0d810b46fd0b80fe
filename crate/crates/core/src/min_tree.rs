//! Static segment tree over `u64` values: range minimum with position, and
//! nearest position to the left or right holding a value below a bound.

#[derive(Debug, Clone)]
pub struct MinTree {
    len: usize,
    size: usize,
    /// `(value, index)` per node; leaves start at `size`.
    nodes: Vec<(u64, usize)>,
}

const EMPTY: (u64, usize) = (u64::MAX, usize::MAX);

impl MinTree {
    pub fn new(values: &[u64]) -> Self {
        let len = values.len();
        let size = len.next_power_of_two().max(1);
        let mut nodes = vec![EMPTY; 2 * size];
        for (i, &v) in values.iter().enumerate() {
            nodes[size + i] = (v, i);
        }
        for x in (1..size).rev() {
            nodes[x] = nodes[2 * x].min(nodes[2 * x + 1]);
        }
        MinTree { len, size, nodes }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Minimum over `lo..hi` as `(index, value)`, leftmost on ties.
    pub fn min_in(&self, lo: usize, hi: usize) -> Option<(usize, u64)> {
        if lo >= hi {
            return None;
        }
        let (mut l, mut r) = (lo + self.size, hi + self.size);
        let mut best = EMPTY;
        while l < r {
            if l & 1 == 1 {
                best = best.min(self.nodes[l]);
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                best = best.min(self.nodes[r]);
            }
            l >>= 1;
            r >>= 1;
        }
        (best.1 != usize::MAX).then_some((best.1, best.0))
    }

    /// Smallest index `>= from` whose value is `< bound`.
    pub fn first_below(&self, from: usize, bound: u64) -> Option<usize> {
        if from >= self.len {
            return None;
        }
        let mut x = from + self.size;
        // climb until a subtree to the right (or x itself) holds a hit
        if self.nodes[x].0 < bound {
            return Some(from);
        }
        loop {
            if x == 1 {
                return None;
            }
            if x & 1 == 0 && self.nodes[x + 1].0 < bound {
                x += 1;
                break;
            }
            x >>= 1;
        }
        while x < self.size {
            x = if self.nodes[2 * x].0 < bound { 2 * x } else { 2 * x + 1 };
        }
        Some(x - self.size)
    }

    /// Largest index `<= to` whose value is `< bound`.
    pub fn last_below(&self, to: usize, bound: u64) -> Option<usize> {
        if self.len == 0 {
            return None;
        }
        let to = to.min(self.len - 1);
        let mut x = to + self.size;
        if self.nodes[x].0 < bound {
            return Some(to);
        }
        loop {
            if x == 1 {
                return None;
            }
            if x & 1 == 1 && self.nodes[x - 1].0 < bound {
                x -= 1;
                break;
            }
            x >>= 1;
        }
        while x < self.size {
            x = if self.nodes[2 * x + 1].0 < bound { 2 * x + 1 } else { 2 * x };
        }
        Some(x - self.size)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn matches_scan(vals in proptest::collection::vec(0u64..50, 1..100), a in 0usize..100, b in 0usize..100, bound in 0u64..55) {
            let t = MinTree::new(&vals);
            let (lo, hi) = (a.min(b) % vals.len(), (a.max(b) % vals.len()) + 1);
            let expect = (lo..hi).map(|i| (vals[i], i)).min().map(|(v, i)| (i, v));
            prop_assert_eq!(t.min_in(lo, hi), expect);
            let from = a % vals.len();
            prop_assert_eq!(t.first_below(from, bound), (from..vals.len()).find(|&i| vals[i] < bound));
            prop_assert_eq!(t.last_below(from, bound), (0..=from).rev().find(|&i| vals[i] < bound));
        }
    }
}
