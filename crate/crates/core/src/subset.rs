//! Fixed-universe bitsets over dense element ids.

use std::cmp::Ordering;
use std::fmt;

const WORD: usize = 64;

/// A subset of `0..universe`, stored as a packed bitset.
///
/// Up-set-ness and independence are predicates checked against a poset or
/// system; a `GroundSubset` itself carries no order structure.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroundSubset {
    universe: usize,
    words: Vec<u64>,
}

impl GroundSubset {
    pub fn empty(universe: usize) -> Self {
        Self {
            universe,
            words: vec![0; universe.div_ceil(WORD)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for (i, w) in s.words.iter_mut().enumerate() {
            let lo = i * WORD;
            let bits = (universe - lo).min(WORD);
            *w = if bits == WORD { u64::MAX } else { (1u64 << bits) - 1 };
        }
        s
    }

    /// Builds a subset from ids. Panics on ids outside the universe.
    pub fn from_ids<I: IntoIterator<Item = usize>>(universe: usize, ids: I) -> Self {
        let mut s = Self::empty(universe);
        for id in ids {
            s.insert(id);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn contains(&self, id: usize) -> bool {
        id < self.universe && self.words[id / WORD] & (1 << (id % WORD)) != 0
    }

    #[inline]
    pub fn insert(&mut self, id: usize) {
        assert!(id < self.universe, "element {id} outside universe {}", self.universe);
        self.words[id / WORD] |= 1 << (id % WORD);
    }

    #[inline]
    pub fn remove(&mut self, id: usize) {
        if id < self.universe {
            self.words[id / WORD] &= !(1 << (id % WORD));
        }
    }

    pub fn with(&self, id: usize) -> Self {
        let mut s = self.clone();
        s.insert(id);
        s
    }

    pub fn without(&self, id: usize) -> Self {
        let mut s = self.clone();
        s.remove(id);
        s
    }

    /// Number of members.
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a ^ b)
    }

    pub fn union_with(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        debug_assert_eq!(self.universe, other.universe);
        Self {
            universe: self.universe,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    /// Members in ascending id order.
    pub fn iter(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Scan order used by every deterministic search: by cardinality, then
    /// lexicographically on the ascending member list.
    pub fn scan_cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.cmp(other))
    }
}

impl Ord for GroundSubset {
    /// Lexicographic on ascending member lists (`{0,2} < {1}`).
    fn cmp(&self, other: &Self) -> Ordering {
        self.universe
            .cmp(&other.universe)
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for GroundSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for GroundSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.index * WORD + bit)
    }
}

impl<'a> IntoIterator for &'a GroundSubset {
    type Item = usize;
    type IntoIter = Ones<'a>;

    fn into_iter(self) -> Ones<'a> {
        self.iter()
    }
}
