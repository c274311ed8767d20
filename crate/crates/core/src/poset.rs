//! Finite posets stored as a closed order relation.
//!
//! Elements are dense ids `0..n` assigned in input order; labels are kept for
//! I/O only. The relation is held as one up-set and one down-set bitset per
//! element, so `leq` is a single bit probe.

use std::collections::HashMap;

use thiserror::Error;

use crate::subset::GroundSubset;
use crate::weight::{Rational, WeightFunction};

/// Default ceiling on ground-set size for exhaustive enumeration.
pub const DEFAULT_CAP: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("order relation has a cycle through {0:?} and {1:?}")]
    CycleDetected(String, String),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("duplicate element {0:?}")]
    DuplicateElement(String),
    #[error("ground set of size {size} exceeds enumeration cap {cap}")]
    GroundSetTooLarge { size: usize, cap: usize },
}

#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    /// `up[x] = { y : x <= y }`
    up: Vec<GroundSubset>,
    /// `down[x] = { y : y <= x }`
    down: Vec<GroundSubset>,
    covers: Vec<(usize, usize)>,
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let covers: Vec<_> = self
            .covers
            .iter()
            .map(|&(a, b)| (&self.labels[a], &self.labels[b]))
            .collect();
        f.debug_struct("Poset")
            .field("elements", &self.labels)
            .field("covers", &covers)
            .finish()
    }
}

impl Poset {
    /// Builds the reflexive-transitive closure of `relations`, where each pair
    /// `(a, b)` asserts `a <= b`.
    pub fn from_labels<S: AsRef<str>>(
        elements: &[S],
        relations: &[(S, S)],
    ) -> Result<Self, PosetError> {
        let labels: Vec<String> = elements.iter().map(|e| e.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(PosetError::DuplicateElement(l.clone()));
            }
        }
        let lookup = |s: &S| {
            index
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| PosetError::UnknownElement(s.as_ref().to_string()))
        };
        let pairs = relations
            .iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>, PosetError>>()?;
        Self::close(labels, index, &pairs)
    }

    /// Builds a poset on ids `0..n` labelled by their decimal id.
    pub fn from_relation(n: usize, relations: &[(usize, usize)]) -> Result<Self, PosetError> {
        Self::from_id_relation((0..n).map(|i| i.to_string()).collect(), relations)
    }

    /// Builds a poset on ids `0..labels.len()` from id pairs `(a, b)`, `a <= b`.
    pub fn from_id_relation(labels: Vec<String>, relations: &[(usize, usize)]) -> Result<Self, PosetError> {
        let n = labels.len();
        if let Some(&(a, b)) = relations.iter().find(|&&(a, b)| a >= n || b >= n) {
            let bad = if a >= n { a } else { b };
            return Err(PosetError::UnknownElement(bad.to_string()));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(PosetError::DuplicateElement(l.clone()));
            }
        }
        Self::close(labels, index, relations)
    }

    /// Antichain on `labels`.
    pub fn antichain<S: AsRef<str>>(labels: &[S]) -> Result<Self, PosetError> {
        Self::from_labels(labels, &[])
    }

    /// Chain `labels[0] < labels[1] < ...`.
    pub fn chain<S: AsRef<str>>(labels: &[S]) -> Result<Self, PosetError> {
        let pairs: Vec<(&str, &str)> = labels
            .windows(2)
            .map(|w| (w[0].as_ref(), w[1].as_ref()))
            .collect();
        let labels: Vec<&str> = labels.iter().map(|l| l.as_ref()).collect();
        Self::from_labels(&labels, &pairs)
    }

    fn close(
        labels: Vec<String>,
        index: HashMap<String, usize>,
        pairs: &[(usize, usize)],
    ) -> Result<Self, PosetError> {
        let n = labels.len();
        let mut up: Vec<GroundSubset> = (0..n).map(|x| GroundSubset::from_ids(n, [x])).collect();
        for &(a, b) in pairs {
            up[a].insert(b);
        }
        // Warshall over bitset rows.
        for k in 0..n {
            let row = up[k].clone();
            for r in up.iter_mut() {
                if r.contains(k) {
                    r.union_with(&row);
                }
            }
        }
        for x in 0..n {
            for y in up[x].iter() {
                if y != x && up[y].contains(x) {
                    return Err(PosetError::CycleDetected(labels[x].clone(), labels[y].clone()));
                }
            }
        }
        let mut down = vec![GroundSubset::empty(n); n];
        for (x, row) in up.iter().enumerate() {
            for y in row {
                down[y].insert(x);
            }
        }
        let mut covers = Vec::new();
        for (x, row) in up.iter().enumerate() {
            let above = row.without(x);
            for y in above.iter() {
                if above.intersection(&down[y]).len() == 1 {
                    covers.push((x, y));
                }
            }
        }
        Ok(Self {
            labels,
            index,
            up,
            down,
            covers,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, id: usize) -> &str {
        &self.labels[id]
    }

    pub fn id_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Subset from labels; fails on unknown labels.
    pub fn subset_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<GroundSubset, PosetError> {
        let mut s = self.empty_subset();
        for l in labels {
            let id = self
                .id_of(l.as_ref())
                .ok_or_else(|| PosetError::UnknownElement(l.as_ref().to_string()))?;
            s.insert(id);
        }
        Ok(s)
    }

    pub fn labels_of(&self, s: &GroundSubset) -> Vec<String> {
        s.iter().map(|x| self.labels[x].clone()).collect()
    }

    pub fn empty_subset(&self) -> GroundSubset {
        GroundSubset::empty(self.len())
    }

    pub fn full_subset(&self) -> GroundSubset {
        GroundSubset::full(self.len())
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    /// `{ y : x <= y }`
    pub fn principal_up(&self, x: usize) -> &GroundSubset {
        &self.up[x]
    }

    /// `{ y : y <= x }`
    pub fn principal_down(&self, x: usize) -> &GroundSubset {
        &self.down[x]
    }

    /// Cover pairs `(x, y)` with `x < y` and nothing strictly between.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn is_antichain(&self) -> bool {
        self.up.iter().all(|r| r.len() == 1)
    }

    fn assert_domain(&self, s: &GroundSubset) {
        assert_eq!(s.universe(), self.len(), "subset belongs to a different ground set");
    }

    pub fn is_up_set(&self, s: &GroundSubset) -> bool {
        self.assert_domain(s);
        s.iter().all(|x| self.up[x].is_subset(s))
    }

    pub fn is_down_set(&self, s: &GroundSubset) -> bool {
        self.assert_domain(s);
        s.iter().all(|x| self.down[x].is_subset(s))
    }

    /// Smallest up-set containing `s`.
    pub fn up_closure(&self, s: &GroundSubset) -> GroundSubset {
        self.assert_domain(s);
        let mut out = s.clone();
        for x in s {
            out.union_with(&self.up[x]);
        }
        out
    }

    pub fn down_closure(&self, s: &GroundSubset) -> GroundSubset {
        self.assert_domain(s);
        let mut out = s.clone();
        for x in s {
            out.union_with(&self.down[x]);
        }
        out
    }

    /// `Max(s)`: members of `s` with nothing of `s` strictly above them.
    pub fn max_elements(&self, s: &GroundSubset) -> GroundSubset {
        self.assert_domain(s);
        let mut out = self.empty_subset();
        for x in s {
            if self.up[x].intersection(s).len() == 1 {
                out.insert(x);
            }
        }
        out
    }

    /// Members of `s` with nothing of `s` strictly below them.
    pub fn min_elements(&self, s: &GroundSubset) -> GroundSubset {
        self.assert_domain(s);
        let mut out = self.empty_subset();
        for x in s {
            if self.down[x].intersection(s).len() == 1 {
                out.insert(x);
            }
        }
        out
    }

    /// `x <= y` implies `w(x) <= w(y)`.
    pub fn is_order_preserving(&self, w: &WeightFunction) -> bool {
        assert_eq!(w.len(), self.len(), "weight function has the wrong length");
        (0..self.len()).all(|x| self.up[x].iter().all(|y| w[x] <= w[y]))
    }

    /// Ids sorted so that `x < y` places `x` before `y`.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&x| (self.down[x].len(), x));
        order
    }

    /// All up-sets in scan order (cardinality, then lexicographic).
    ///
    /// Branches on a maximal undecided element: including it is always
    /// consistent, excluding it excludes its whole down-set. Every leaf is a
    /// distinct up-set, so the count equals the number of antichains.
    pub fn enumerate_up_sets(&self, cap: usize) -> Result<Vec<GroundSubset>, PosetError> {
        if self.len() > cap {
            return Err(PosetError::GroundSetTooLarge {
                size: self.len(),
                cap,
            });
        }
        let mut out = Vec::new();
        self.branch(self.full_subset(), self.empty_subset(), &mut out);
        out.sort_by(GroundSubset::scan_cmp);
        Ok(out)
    }

    fn branch(&self, undecided: GroundSubset, chosen: GroundSubset, out: &mut Vec<GroundSubset>) {
        let pivot = undecided
            .iter()
            .find(|&x| self.up[x].intersection(&undecided).len() == 1);
        let Some(m) = pivot else {
            out.push(chosen);
            return;
        };
        self.branch(undecided.difference(&self.down[m]), chosen.clone(), out);
        self.branch(undecided.without(m), chosen.with(m), out);
    }

    /// The same ground set with the order reversed.
    pub fn dual(&self) -> Poset {
        Poset {
            labels: self.labels.clone(),
            index: self.index.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
            covers: {
                let mut c: Vec<_> = self.covers.iter().map(|&(a, b)| (b, a)).collect();
                c.sort_unstable();
                c
            },
        }
    }

    /// Smallest order-preserving weight dominating `base` pointwise:
    /// `w(x) = max(base(x), max_{y<x} w(y))`, swept along a linear extension.
    pub fn monotone_closure(&self, base: &WeightFunction) -> WeightFunction {
        assert_eq!(base.len(), self.len(), "weight function has the wrong length");
        let mut lower: Vec<Vec<usize>> = vec![Vec::new(); self.len()];
        for &(a, b) in &self.covers {
            lower[b].push(a);
        }
        let mut values: Vec<Rational> = base.values().to_vec();
        for x in self.linear_extension() {
            for &y in &lower[x] {
                if values[y] > values[x] {
                    values[x] = values[y].clone();
                }
            }
        }
        WeightFunction::new(values).expect("max of nonnegative weights is nonnegative")
    }
}
