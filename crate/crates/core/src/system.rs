//! Po-independence systems and the poset-matroid axioms.
//!
//! A system is a poset plus a family of up-sets, given either explicitly or
//! through a membership predicate. The empty set is always a member.
//! Axiom checks materialize the family and scan pairs in scan order
//! (cardinality, then lexicographic), returning the first witness found.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_traits::One;
use thiserror::Error;

use crate::poset::{Poset, PosetError, DEFAULT_CAP};
use crate::subset::GroundSubset;
use crate::weight::{Rational, WeightFunction};

pub type Membership = Arc<dyn Fn(&GroundSubset) -> bool + Send + Sync>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SystemError {
    #[error("family member {0:?} is not an up-set")]
    NotAnUpSet(Vec<usize>),
    #[error("subset or weight does not match the ground set (expected {expected}, got {got})")]
    DomainMismatch { expected: usize, got: usize },
    #[error("ground set of size {size} exceeds enumeration cap {cap}")]
    GroundSetTooLarge { size: usize, cap: usize },
    #[error("not an axiom violation: {0}")]
    NotAViolation(&'static str),
    #[error("family is not hereditary: {x:?} is missing below {y:?}")]
    NotHereditary { x: Vec<usize>, y: Vec<usize> },
}

impl From<PosetError> for SystemError {
    fn from(e: PosetError) -> Self {
        match e {
            PosetError::GroundSetTooLarge { size, cap } => SystemError::GroundSetTooLarge { size, cap },
            other => unreachable!("poset construction error during system use: {other}"),
        }
    }
}

#[derive(Clone)]
pub enum Family {
    Explicit(HashSet<GroundSubset>),
    Oracle(Membership),
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Explicit(m) => {
                let mut v: Vec<_> = m.iter().collect();
                v.sort_by(|a, b| a.scan_cmp(b));
                f.debug_tuple("Explicit").field(&v).finish()
            }
            Family::Oracle(_) => f.write_str("Oracle(..)"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PoIndependenceSystem {
    poset: Poset,
    family: Family,
    cap: usize,
}

/// Independent sets `A`, `B` with `|B| = |A| + 1` such that no maximal
/// element of `B \ A` extends `A` to an independent set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    a: GroundSubset,
    b: GroundSubset,
}

impl AxiomViolation {
    /// Re-validates `(a, b)` against `sys`.
    pub fn new(sys: &PoIndependenceSystem, a: GroundSubset, b: GroundSubset) -> Result<Self, SystemError> {
        sys.check_domain(&a)?;
        sys.check_domain(&b)?;
        if !sys.is_independent(&a) || !sys.is_independent(&b) {
            return Err(SystemError::NotAViolation("both sets must be independent"));
        }
        if b.len() != a.len() + 1 {
            return Err(SystemError::NotAViolation("|B| must equal |A| + 1"));
        }
        let candidates = sys.poset.max_elements(&b.difference(&a));
        if candidates.iter().any(|y| sys.is_independent(&a.with(y))) {
            return Err(SystemError::NotAViolation("some maximal element of B \\ A augments A"));
        }
        let v = Self { a, b };
        // Unreachable for genuine violations: k = t forces B = A + {b}.
        if v.k() <= v.t() {
            return Err(SystemError::NotAViolation("k must exceed t"));
        }
        Ok(v)
    }

    pub fn a(&self) -> &GroundSubset {
        &self.a
    }

    pub fn b(&self) -> &GroundSubset {
        &self.b
    }

    /// `|A|`
    pub fn k(&self) -> usize {
        self.a.len()
    }

    /// `|A ∩ B|`
    pub fn t(&self) -> usize {
        self.a.intersection(&self.b).len()
    }
}

impl PoIndependenceSystem {
    /// Explicit family. Every member must be an up-set; `∅` is added.
    /// Hereditarity is not enforced here; see [`Self::check_hereditary`].
    pub fn explicit<I>(poset: Poset, members: I) -> Result<Self, SystemError>
    where
        I: IntoIterator<Item = GroundSubset>,
    {
        let mut family = HashSet::new();
        family.insert(poset.empty_subset());
        for m in members {
            if m.universe() != poset.len() {
                return Err(SystemError::DomainMismatch {
                    expected: poset.len(),
                    got: m.universe(),
                });
            }
            if !poset.is_up_set(&m) {
                return Err(SystemError::NotAnUpSet(m.to_vec()));
            }
            family.insert(m);
        }
        Ok(Self {
            poset,
            family: Family::Explicit(family),
            cap: DEFAULT_CAP,
        })
    }

    /// Explicit family made of every up-set contained in some generator.
    pub fn down_closed<I>(poset: Poset, generators: I) -> Result<Self, SystemError>
    where
        I: IntoIterator<Item = GroundSubset>,
    {
        let gens: Vec<GroundSubset> = generators.into_iter().collect();
        let seed = Self::explicit(poset, gens.iter().cloned())?;
        let mut family = HashSet::new();
        let mut stack: Vec<GroundSubset> = gens;
        stack.push(seed.poset.empty_subset());
        while let Some(s) = stack.pop() {
            if family.contains(&s) {
                continue;
            }
            // Dropping a minimal element keeps an up-set an up-set, and every
            // up-subset is reachable this way.
            for m in seed.poset.min_elements(&s).iter() {
                let t = s.without(m);
                if !family.contains(&t) {
                    stack.push(t);
                }
            }
            family.insert(s);
        }
        Ok(Self {
            family: Family::Explicit(family),
            ..seed
        })
    }

    /// Every up-set is independent.
    pub fn free(poset: Poset) -> Self {
        Self::oracle(poset, Arc::new(|_| true))
    }

    /// Family given by a pure membership predicate. The predicate is only
    /// consulted on up-sets; `∅` is always independent.
    pub fn oracle(poset: Poset, predicate: Membership) -> Self {
        Self {
            poset,
            family: Family::Oracle(predicate),
            cap: DEFAULT_CAP,
        }
    }

    /// Overrides the enumeration cap used when materializing the family.
    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub(crate) fn check_domain(&self, s: &GroundSubset) -> Result<(), SystemError> {
        if s.universe() != self.len() {
            return Err(SystemError::DomainMismatch {
                expected: self.len(),
                got: s.universe(),
            });
        }
        Ok(())
    }

    /// Up-set and member of the family. Non-up-sets are always rejected.
    pub fn is_independent(&self, s: &GroundSubset) -> bool {
        if s.universe() != self.len() || !self.poset.is_up_set(s) {
            return false;
        }
        if s.is_empty() {
            return true;
        }
        match &self.family {
            Family::Explicit(members) => members.contains(s),
            Family::Oracle(pred) => pred(s),
        }
    }

    /// All independent sets in scan order.
    pub fn independent_sets(&self) -> Result<Vec<GroundSubset>, SystemError> {
        let mut out: Vec<GroundSubset> = match &self.family {
            Family::Explicit(members) => members.iter().cloned().collect(),
            Family::Oracle(_) => self
                .poset
                .enumerate_up_sets(self.cap)?
                .into_iter()
                .filter(|s| self.is_independent(s))
                .collect(),
        };
        out.sort_by(GroundSubset::scan_cmp);
        Ok(out)
    }

    fn materialize(&self) -> Result<Materialized, SystemError> {
        let sets = self.independent_sets()?;
        let lookup = sets.iter().cloned().collect();
        Ok(Materialized { sets, lookup })
    }

    /// Axiom (i): returns `(X, Y)` with `Y` independent, `X ⊆ Y` an up-set,
    /// and `X` not independent, or `None` if the family is hereditary.
    pub fn check_hereditary(&self) -> Result<Option<(GroundSubset, GroundSubset)>, SystemError> {
        let fam = self.materialize()?;
        Ok(fam.hereditary_gap(&self.poset))
    }

    /// Axiom (ii): for independent `X`, `Y` with `|X| < |Y|` some
    /// `y ∈ Max(Y \ X)` has `X ∪ {y}` independent. The first failing pair is
    /// shrunk to adjacent sizes before being returned.
    pub fn axiom_ii_witness(&self) -> Result<Option<AxiomViolation>, SystemError> {
        let fam = self.materialize()?;
        for (i, x) in fam.sets.iter().enumerate() {
            let aug = fam.augmenters(&self.poset, x);
            let start = i + fam.sets[i..].partition_point(|y| y.len() <= x.len());
            for y in &fam.sets[start..] {
                if !self.augments(x, y, &aug) {
                    let b = fam.shrink(&self.poset, x, y.clone());
                    return Ok(Some(AxiomViolation::new(self, x.clone(), b)?));
                }
            }
        }
        Ok(None)
    }

    /// Local axiom (ii'): as (ii), restricted to `|Y| = |X| + 1` and
    /// `|X ∩ Y| = |X| - 1`.
    pub fn axiom_ii_prime_witness(&self) -> Result<Option<AxiomViolation>, SystemError> {
        let fam = self.materialize()?;
        for x in fam.sets.iter().filter(|x| !x.is_empty()) {
            let aug = fam.augmenters(&self.poset, x);
            let lo = fam.sets.partition_point(|y| y.len() <= x.len());
            let hi = fam.sets.partition_point(|y| y.len() <= x.len() + 1);
            for y in &fam.sets[lo..hi] {
                if x.intersection(y).len() + 1 == x.len() && !self.augments(x, y, &aug) {
                    return Ok(Some(AxiomViolation::new(self, x.clone(), y.clone())?));
                }
            }
        }
        Ok(None)
    }

    /// Some `y ∈ Max(Y \ X)` lies in `aug`.
    fn augments(&self, x: &GroundSubset, y: &GroundSubset, aug: &GroundSubset) -> bool {
        let diff = y.difference(x);
        diff.intersection(aug)
            .iter()
            .any(|m| self.poset.principal_up(m).intersection(&diff).len() == 1)
    }

    /// Nonempty, hereditary, and satisfies the augmentation axiom.
    pub fn is_poset_matroid(&self) -> Result<bool, SystemError> {
        Ok(self.check_hereditary()?.is_none() && self.axiom_ii_witness()?.is_none())
    }

    /// Weight under which PGREEDY is strictly suboptimal: `α` on `A`, `1` on
    /// `B \ A`, `0` elsewhere, with `α = 1 + 1/(2(k - t))`.
    pub fn adversarial_weight(&self, v: &AxiomViolation) -> Result<WeightFunction, SystemError> {
        let v = AxiomViolation::new(self, v.a.clone(), v.b.clone())?;
        let gap = (v.k() - v.t()) as i64;
        let alpha = Rational::one() + Rational::new(1.into(), (2 * gap).into());
        let values = (0..self.len())
            .map(|x| {
                if v.a.contains(x) {
                    alpha.clone()
                } else if v.b.contains(x) {
                    Rational::one()
                } else {
                    Rational::from_integer(0.into())
                }
            })
            .collect();
        Ok(WeightFunction::new(values).expect("adversarial weights are nonnegative"))
    }
}

struct Materialized {
    sets: Vec<GroundSubset>,
    lookup: HashSet<GroundSubset>,
}

impl Materialized {
    fn hereditary_gap(&self, poset: &Poset) -> Option<(GroundSubset, GroundSubset)> {
        // Closure under dropping one minimal element implies closure under
        // all up-subsets, so one-step gaps are complete.
        for y in &self.sets {
            let missing = poset
                .min_elements(y)
                .iter()
                .map(|m| y.without(m))
                .filter(|x| !self.lookup.contains(x))
                .min_by(GroundSubset::scan_cmp);
            if let Some(x) = missing {
                return Some((x, y.clone()));
            }
        }
        None
    }

    /// `{ y ∉ X : X ∪ {y} independent }`
    fn augmenters(&self, poset: &Poset, x: &GroundSubset) -> GroundSubset {
        let mut aug = poset.empty_subset();
        for y in (0..poset.len()).filter(|&y| !x.contains(y)) {
            if self.lookup.contains(&x.with(y)) {
                aug.insert(y);
            }
        }
        aug
    }

    /// Drops minimal elements of `y` lying outside `x` until `|y| = |x| + 1`.
    /// Each drop keeps `y` an up-set and only shrinks `Max(y \ x)`.
    fn shrink(&self, poset: &Poset, x: &GroundSubset, mut y: GroundSubset) -> GroundSubset {
        while y.len() > x.len() + 1 {
            let next = poset
                .min_elements(&y)
                .difference(x)
                .iter()
                .map(|m| y.without(m))
                .find(|s| self.lookup.contains(s));
            match next {
                Some(s) => y = s,
                None => break,
            }
        }
        y
    }
}
