//! GREEDY and PGREEDY with full decision traces.

use num_traits::Zero;
use thiserror::Error;

use crate::subset::GroundSubset;
use crate::system::PoIndependenceSystem;
use crate::weight::{Rational, WeightFunction};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GreedyError {
    #[error("weight is not order-preserving: {lower:?} <= {upper:?} but w({lower}) > w({upper})")]
    WeightNotOrderPreserving { lower: String, upper: String },
    #[error("weight function covers {got} elements, ground set has {expected}")]
    DomainMismatch { expected: usize, got: usize },
    #[error("GREEDY needs an antichain poset; {lower:?} < {upper:?}")]
    NotAnAntichain { lower: String, upper: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepOutcome {
    Accepted,
    RejectedDependent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub element: usize,
    pub weight: Rational,
    pub outcome: StepOutcome,
}

impl Step {
    pub fn accepted(&self) -> bool {
        self.outcome == StepOutcome::Accepted
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyTrace {
    pub steps: Vec<Step>,
    pub result: GroundSubset,
    pub total: Rational,
}

impl GreedyTrace {
    pub fn accepted(&self) -> impl Iterator<Item = &Step> {
        self.steps.iter().filter(|s| s.accepted())
    }
}

/// Rule for choosing among equal-weight candidates.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum TieBreak {
    #[default]
    SmallestId,
    LargestId,
}

#[derive(Debug, Clone, Copy)]
pub struct GreedyOptions {
    pub tie_break: TieBreak,
    /// Reject weights that are not order-preserving. Turning this off voids
    /// any optimality guarantee.
    pub check_order: bool,
}

impl Default for GreedyOptions {
    fn default() -> Self {
        Self {
            tie_break: TieBreak::SmallestId,
            check_order: true,
        }
    }
}

/// PGREEDY with default options.
pub fn pgreedy(sys: &PoIndependenceSystem, w: &WeightFunction) -> Result<GreedyTrace, GreedyError> {
    pgreedy_with(sys, w, GreedyOptions::default())
}

/// Repeatedly takes a maximum-weight maximal element `m` of the remaining
/// elements `Q`, removes it, and keeps it iff `S ∪ {m}` is independent.
pub fn pgreedy_with(
    sys: &PoIndependenceSystem,
    w: &WeightFunction,
    opts: GreedyOptions,
) -> Result<GreedyTrace, GreedyError> {
    check_length(sys, w)?;
    let poset = sys.poset();
    if opts.check_order {
        if let Some((x, y)) = order_violation(sys, w) {
            return Err(GreedyError::WeightNotOrderPreserving {
                lower: poset.label(x).to_string(),
                upper: poset.label(y).to_string(),
            });
        }
    }
    Ok(run(sys, w, opts.tie_break, |q| poset.max_elements(q)))
}

/// Classic GREEDY; requires every pair of elements to be incomparable.
pub fn greedy(sys: &PoIndependenceSystem, w: &WeightFunction) -> Result<GreedyTrace, GreedyError> {
    check_length(sys, w)?;
    let poset = sys.poset();
    for x in 0..poset.len() {
        if let Some(y) = poset.principal_up(x).iter().find(|&y| y != x) {
            return Err(GreedyError::NotAnAntichain {
                lower: poset.label(x).to_string(),
                upper: poset.label(y).to_string(),
            });
        }
    }
    Ok(run(sys, w, TieBreak::SmallestId, |q| q.clone()))
}

fn check_length(sys: &PoIndependenceSystem, w: &WeightFunction) -> Result<(), GreedyError> {
    if w.len() != sys.len() {
        return Err(GreedyError::DomainMismatch {
            expected: sys.len(),
            got: w.len(),
        });
    }
    Ok(())
}

fn order_violation(sys: &PoIndependenceSystem, w: &WeightFunction) -> Option<(usize, usize)> {
    let poset = sys.poset();
    (0..poset.len()).find_map(|x| {
        poset
            .principal_up(x)
            .iter()
            .find(|&y| w[x] > w[y])
            .map(|y| (x, y))
    })
}

fn run(
    sys: &PoIndependenceSystem,
    w: &WeightFunction,
    tie_break: TieBreak,
    candidates: impl Fn(&GroundSubset) -> GroundSubset,
) -> GreedyTrace {
    let n = sys.len();
    let mut remaining = GroundSubset::full(n);
    let mut chosen = GroundSubset::empty(n);
    let mut total = Rational::zero();
    let mut steps = Vec::with_capacity(n);
    while !remaining.is_empty() {
        let m = select(&candidates(&remaining), w, tie_break);
        remaining.remove(m);
        let grown = chosen.with(m);
        let outcome = if sys.is_independent(&grown) {
            chosen = grown;
            total += &w[m];
            StepOutcome::Accepted
        } else {
            StepOutcome::RejectedDependent
        };
        steps.push(Step {
            element: m,
            weight: w[m].clone(),
            outcome,
        });
    }
    GreedyTrace {
        steps,
        result: chosen,
        total,
    }
}

fn select(candidates: &GroundSubset, w: &WeightFunction, tie_break: TieBreak) -> usize {
    let mut best: Option<usize> = None;
    for x in candidates {
        best = match best {
            None => Some(x),
            Some(b) if w[x] > w[b] => Some(x),
            Some(b) if w[x] == w[b] && tie_break == TieBreak::LargestId => Some(x.max(b)),
            keep => keep,
        };
    }
    best.expect("a nonempty finite poset has a maximal element")
}
