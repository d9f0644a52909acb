//! Fixed-capacity bit set over `u64` blocks.
//!
//! Backs group subsets and the orthogonality-graph adjacency rows. The
//! clique search and the exact-cover tiling search spend nearly all of
//! their time in `intersect_with` / `iter_ones`, so those stay branch-lean.

/// A set of indices in `0..len`, stored one bit per index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    blocks: Vec<u64>,
    len: usize,
}

impl BitSet {
    /// Empty set over the universe `0..len`.
    pub fn new(len: usize) -> Self {
        BitSet {
            blocks: vec![0; len.div_ceil(64)],
            len,
        }
    }

    /// Universe size (not the cardinality).
    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.blocks[i >> 6] |= 1u64 << (i & 63);
    }

    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.blocks[i >> 6] &= !(1u64 << (i & 63));
    }

    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.blocks[i >> 6] & (1u64 << (i & 63)) != 0
    }

    /// Number of elements in the set.
    pub fn count(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn clear(&mut self) {
        self.blocks.iter_mut().for_each(|b| *b = 0);
    }

    pub fn union_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= !b;
        }
    }

    pub fn is_disjoint(&self, other: &BitSet) -> bool {
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & !b == 0)
    }

    /// Smallest index not in the set, if any.
    pub fn first_zero(&self) -> Option<usize> {
        for (w, &b) in self.blocks.iter().enumerate() {
            if b != u64::MAX {
                let i = (w << 6) + (!b).trailing_zeros() as usize;
                if i < self.len {
                    return Some(i);
                }
            }
        }
        None
    }

    /// Smallest index in the set, if any.
    pub fn first_one(&self) -> Option<usize> {
        for (w, &b) in self.blocks.iter().enumerate() {
            if b != 0 {
                return Some((w << 6) + b.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Iterate set members in increasing order.
    pub fn iter_ones(&self) -> Ones<'_> {
        Ones {
            blocks: &self.blocks,
            word: 0,
            bits: self.blocks.first().copied().unwrap_or(0),
        }
    }

    /// Member indices as a sorted vector.
    pub fn to_vec(&self) -> Vec<usize> {
        self.iter_ones().collect()
    }

    /// Order sets of equal cardinality by their sorted element lists.
    ///
    /// The set containing the smallest index at which the two sets differ is
    /// the smaller one. Used by canonicalization, which only ever compares
    /// translates (same cardinality).
    pub fn lex_cmp(&self, other: &BitSet) -> std::cmp::Ordering {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.blocks.iter().zip(&other.blocks) {
            let diff = a ^ b;
            if diff != 0 {
                let bit = 1u64 << diff.trailing_zeros();
                return if a & bit != 0 {
                    std::cmp::Ordering::Less
                } else {
                    std::cmp::Ordering::Greater
                };
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl std::fmt::Debug for BitSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter_ones()).finish()
    }
}

pub struct Ones<'a> {
    blocks: &'a [u64],
    word: usize,
    bits: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.bits == 0 {
            self.word += 1;
            if self.word >= self.blocks.len() {
                return None;
            }
            self.bits = self.blocks[self.word];
        }
        let tz = self.bits.trailing_zeros() as usize;
        self.bits &= self.bits - 1;
        Some((self.word << 6) + tz)
    }
}
