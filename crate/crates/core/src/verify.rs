//! Brute-force optimum, instance generators, and the end-to-end check that
//! PGREEDY is optimal for every order-preserving weight exactly on poset
//! matroids.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::greedy::{pgreedy, GreedyError};
use crate::poset::Poset;
use crate::simplicial::{Face, HCycleWitness, SimplicialComplex};
use crate::subset::GroundSubset;
use crate::system::{AxiomViolation, PoIndependenceSystem, SystemError};
use crate::weight::{Rational, WeightFunction};

/// Denominator of randomly drawn base weights.
pub const WEIGHT_DENOMINATOR: i64 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Greedy(#[from] GreedyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Witnesses {
    #[default]
    All,
    First,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimumReport {
    pub optimum: Rational,
    pub witnesses: Vec<GroundSubset>,
    pub family_size: usize,
}

/// Maximum of `w` over all independent sets, by exhaustive scan.
pub fn brute_force_optimum(
    sys: &PoIndependenceSystem,
    w: &WeightFunction,
    mode: Witnesses,
) -> Result<OptimumReport, VerifyError> {
    if sys.len() > sys.cap() {
        return Err(SystemError::GroundSetTooLarge {
            size: sys.len(),
            cap: sys.cap(),
        }
        .into());
    }
    if w.len() != sys.len() {
        return Err(GreedyError::DomainMismatch {
            expected: sys.len(),
            got: w.len(),
        }
        .into());
    }
    let family = sys.independent_sets()?;
    let mut optimum = Rational::zero();
    let mut witnesses = vec![sys.poset().empty_subset()];
    for s in &family {
        let v = w.total(s);
        if v > optimum {
            optimum = v;
            witnesses.clear();
            witnesses.push(s.clone());
        } else if v == optimum && mode == Witnesses::All && !s.is_empty() {
            witnesses.push(s.clone());
        }
    }
    if mode == Witnesses::First {
        witnesses.truncate(1);
    }
    Ok(OptimumReport {
        optimum,
        witnesses,
        family_size: family.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeFailure {
    pub index: usize,
    pub weight: WeightFunction,
    pub greedy_total: Rational,
    pub optimum: Rational,
}

impl ProbeFailure {
    pub fn gap(&self) -> Rational {
        &self.optimum - &self.greedy_total
    }
}

/// `None` when PGREEDY attains the optimum for every weight; otherwise the
/// first weight where it falls short.
pub fn greedy_correctness_probe(
    sys: &PoIndependenceSystem,
    weights: &[WeightFunction],
) -> Result<Option<ProbeFailure>, VerifyError> {
    for (index, w) in weights.iter().enumerate() {
        let trace = pgreedy(sys, w)?;
        let best = brute_force_optimum(sys, w, Witnesses::First)?;
        if trace.total != best.optimum {
            return Ok(Some(ProbeFailure {
                index,
                weight: w.clone(),
                greedy_total: trace.total,
                optimum: best.optimum,
            }));
        }
    }
    Ok(None)
}

/// Order-preserving weight: monotone closure of bases `k/64`, `k ∈ [0, 256]`.
pub fn random_weight<R: Rng>(poset: &Poset, rng: &mut R) -> WeightFunction {
    let base = (0..poset.len())
        .map(|_| Rational::new(rng.gen_range(0..=4 * WEIGHT_DENOMINATOR).into(), WEIGHT_DENOMINATOR.into()))
        .collect();
    poset.monotone_closure(&WeightFunction::new(base).expect("nonnegative draws"))
}

pub fn random_weights(poset: &Poset, count: usize, seed: u64) -> Vec<WeightFunction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_weight(poset, &mut rng)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Consistent,
    TheoremViolation(String),
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Consistent => f.write_str("consistent"),
            Outcome::TheoremViolation(why) => write!(f, "THEOREM-VIOLATION: {why}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub system_id: String,
    pub is_matroid: bool,
    pub greedy_always_optimal: bool,
    /// Optimum minus PGREEDY's total under the adversarial weight.
    pub adversarial_gap: Option<Rational>,
    pub violation: Option<AxiomViolation>,
    pub adversarial_weight: Option<WeightFunction>,
    pub probe_failure: Option<ProbeFailure>,
    pub trials: usize,
    pub seed: u64,
    pub outcome: Outcome,
}

/// Decides the axioms, then either probes a matroid with `trials` random
/// order-preserving weights or defeats a non-matroid with the adversarial
/// weight built from its first violation. Any disagreement with the
/// equivalence is reported as [`Outcome::TheoremViolation`].
pub fn edmonds_rado_check(
    system_id: impl Into<String>,
    sys: &PoIndependenceSystem,
    trials: usize,
    seed: u64,
) -> Result<EquivalenceReport, VerifyError> {
    if let Some((x, y)) = sys.check_hereditary()? {
        return Err(SystemError::NotHereditary {
            x: x.to_vec(),
            y: y.to_vec(),
        }
        .into());
    }
    let mut report = EquivalenceReport {
        system_id: system_id.into(),
        is_matroid: true,
        greedy_always_optimal: true,
        adversarial_gap: None,
        violation: None,
        adversarial_weight: None,
        probe_failure: None,
        trials: 0,
        seed,
        outcome: Outcome::Consistent,
    };
    match sys.axiom_ii_witness()? {
        None => {
            let weights = random_weights(sys.poset(), trials, seed);
            report.trials = trials;
            if let Some(fail) = greedy_correctness_probe(sys, &weights)? {
                report.greedy_always_optimal = false;
                report.outcome = Outcome::TheoremViolation(format!(
                    "PGREEDY reached {} but the optimum is {} on a poset matroid (trial {})",
                    fail.greedy_total, fail.optimum, fail.index
                ));
                report.probe_failure = Some(fail);
            }
        }
        Some(v) => {
            report.is_matroid = false;
            report.greedy_always_optimal = false;
            let w = sys.adversarial_weight(&v)?;
            let trace = pgreedy(sys, &w)?;
            let best = brute_force_optimum(sys, &w, Witnesses::First)?;
            let gap = &best.optimum - &trace.total;
            if !gap.is_positive() {
                report.outcome = Outcome::TheoremViolation(format!(
                    "adversarial weight did not defeat PGREEDY (greedy {}, optimum {})",
                    trace.total, best.optimum
                ));
            }
            report.adversarial_gap = Some(gap);
            report.violation = Some(v);
            report.adversarial_weight = Some(w);
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSummary {
    pub systems: usize,
    pub violations: usize,
}

/// Per-system seed derived from a corpus seed.
pub fn system_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_add(index as u64)
}

/// Runs [`edmonds_rado_check`] over a corpus in parallel; reports come back in
/// corpus order.
pub fn run_corpus(
    systems: &[(String, PoIndependenceSystem)],
    trials: usize,
    seed: u64,
) -> Result<(Vec<EquivalenceReport>, CorpusSummary), VerifyError> {
    let reports = systems
        .par_iter()
        .enumerate()
        .map(|(i, (id, sys))| edmonds_rado_check(id.clone(), sys, trials, system_seed(seed, i)))
        .collect::<Result<Vec<_>, _>>()?;
    let violations = reports
        .iter()
        .filter(|r| matches!(r.outcome, Outcome::TheoremViolation(_)))
        .count();
    let summary = CorpusSummary {
        systems: reports.len(),
        violations,
    };
    Ok((reports, summary))
}

fn element_labels(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if n <= 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("e{i}")
            }
        })
        .collect()
}

/// Seeded random poset: each pair `i < j` is related with probability 1/3,
/// then closed.
pub fn random_poset<R: Rng>(size: usize, rng: &mut R) -> Poset {
    let mut pairs = Vec::new();
    for i in 0..size {
        for j in i + 1..size {
            if rng.gen_ratio(1, 3) {
                pairs.push((i, j));
            }
        }
    }
    Poset::from_id_relation(element_labels(size), &pairs).expect("forward pairs are acyclic")
}

/// Random poset plus the down-closure of `generator_count` random up-sets
/// (up-closures of uniformly random subsets). Deterministic per seed.
pub fn random_system(poset_size: usize, generator_count: usize, seed: u64) -> PoIndependenceSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let poset = random_poset(poset_size, &mut rng);
    let generators: Vec<GroundSubset> = (0..generator_count)
        .map(|_| {
            let s = GroundSubset::from_ids(poset_size, (0..poset_size).filter(|_| rng.gen_bool(0.5)));
            poset.up_closure(&s)
        })
        .collect();
    PoIndependenceSystem::down_closed(poset, generators).expect("up-closures are up-sets")
}

/// Random complex on vertices `1..=vertex_count`; each facet has a uniform
/// size in `1..=max_facet_size` and uniform vertices. Deterministic per seed.
pub fn random_complex(vertex_count: usize, facet_count: usize, max_facet_size: usize, seed: u64) -> SimplicialComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels: Vec<String> = (1..=vertex_count).map(|v| v.to_string()).collect();
    let top = max_facet_size.min(vertex_count).max(1);
    let facets: Vec<Vec<usize>> = (0..facet_count)
        .map(|_| {
            let size = rng.gen_range(1..=top);
            sample(&mut rng, vertex_count, size).into_vec()
        })
        .collect();
    SimplicialComplex::from_ids(labels, &facets).expect("facets are nonempty and in range")
}

/// Every face of at most `top` vertices on vertices `1..=vertex_count`.
pub fn full_skeleton(vertex_count: usize, top: usize) -> SimplicialComplex {
    let labels: Vec<String> = (1..=vertex_count).map(|v| v.to_string()).collect();
    let facets: Vec<Vec<usize>> = (0u32..1 << vertex_count)
        .filter(|m| m.count_ones() as usize == top.min(vertex_count))
        .map(|m| (0..vertex_count).filter(|&v| m & (1 << v) != 0).collect())
        .collect();
    SimplicialComplex::from_ids(labels, &facets).expect("valid facets")
}

/// Random `h`-cycle of `c` grown from the boundary of `start`: each step
/// picks a member `M` and a vertex `v` with `M + v` a face and replaces the
/// cycle by its symmetric difference with the boundary of `M + v`. Steps
/// that leave a nonempty `h`-cycle are kept, others are discarded.
pub fn random_h_cycle<R: Rng>(c: &SimplicialComplex, start: &[usize], steps: usize, rng: &mut R) -> HCycleWitness {
    let first = c.boundary_cycle(start).expect("start is a face of at least 3 vertices");
    let h = first.h;
    let mut cycle: BTreeSet<Face> = first.members.into_iter().collect();
    for _ in 0..steps {
        let member = cycle.iter().nth(rng.gen_range(0..cycle.len())).expect("nonempty").clone();
        let cofaces: Vec<usize> = (0..c.vertices().len())
            .filter(|v| member.binary_search(v).is_err())
            .filter_map(|v| {
                let mut f = member.clone();
                f.push(v);
                f.sort_unstable();
                c.face_id(&f)
            })
            .collect();
        if cofaces.is_empty() {
            continue;
        }
        let f = c.face(cofaces[rng.gen_range(0..cofaces.len())]);
        let boundary = c.boundary_cycle(f).expect("coface of an h-face");
        let next: BTreeSet<Face> = cycle
            .symmetric_difference(&boundary.members.into_iter().collect())
            .cloned()
            .collect();
        let members: Vec<Face> = next.iter().cloned().collect();
        if !members.is_empty() && c.is_h_cycle(&members, h) {
            cycle = next;
        }
    }
    HCycleWitness {
        h,
        members: cycle.into_iter().collect(),
    }
}

/// Two distinct `h`-cycles of `c` sharing at least one face. The second one
/// starts from an `(h+1)`-face containing a member of the first.
pub fn overlapping_cycle_pair(c: &SimplicialComplex, h: usize, steps: usize, seed: u64) -> (HCycleWitness, HCycleWitness) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tops: Vec<usize> = c.faces_of_cardinality(h + 1).collect();
    assert!(!tops.is_empty(), "complex has no faces of {} vertices", h + 1);
    loop {
        let start = c.face(tops[rng.gen_range(0..tops.len())]).clone();
        let d1 = random_h_cycle(c, &start, steps, &mut rng);
        let member = &d1.members[rng.gen_range(0..d1.members.len())];
        let around: Vec<&Face> = tops
            .iter()
            .map(|&t| c.face(t))
            .filter(|t| member.iter().all(|v| t.binary_search(v).is_ok()))
            .collect();
        let start = around[rng.gen_range(0..around.len())].clone();
        let d2 = random_h_cycle(c, &start, steps, &mut rng);
        let shared = d1.members.iter().any(|f| d2.members.binary_search(f).is_ok());
        if shared && d1 != d2 {
            return (d1, d2);
        }
    }
}

/// Every labelled poset on `n` elements, in a fixed order.
pub fn all_posets(n: usize) -> Vec<Poset> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let rel: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(b, _)| mask & (1 << b) != 0)
            .map(|(_, &p)| p)
            .collect();
        let Ok(p) = Poset::from_id_relation(element_labels(n), &rel) else {
            continue;
        };
        // Keep only closed relations so each order appears once.
        let strict = (0..n).map(|x| p.principal_up(x).len() - 1).sum::<usize>();
        if strict == rel.len() {
            out.push(p);
        }
    }
    out
}

/// Every po-independence system on every poset with at most `max_n`
/// elements. Families are enumerated through their maximal members, which
/// form a nonempty antichain in the lattice of up-sets.
pub fn exhaustive_systems(max_n: usize) -> Vec<(String, PoIndependenceSystem)> {
    let mut out = Vec::new();
    for n in 0..=max_n {
        for (pi, poset) in all_posets(n).into_iter().enumerate() {
            let ups = poset.enumerate_up_sets(n).expect("within cap");
            assert!(ups.len() <= 20, "up-set lattice too large for exhaustive families");
            let mut fi = 0;
            for mask in 1u32..1 << ups.len() {
                let chosen: Vec<&GroundSubset> = (0..ups.len()).filter(|&b| mask & (1 << b) != 0).map(|b| &ups[b]).collect();
                let antichain = chosen
                    .iter()
                    .all(|a| chosen.iter().all(|b| std::ptr::eq(*a, *b) || !a.is_subset(b)));
                if !antichain {
                    continue;
                }
                let sys = PoIndependenceSystem::down_closed(poset.clone(), chosen.into_iter().cloned())
                    .expect("up-sets");
                out.push((format!("exh-n{n}-p{pi}-f{fi}"), sys));
                fi += 1;
            }
        }
    }
    out
}

/// `count` random systems on 4–6 elements with 1–4 generators.
pub fn random_corpus(count: usize, seed: u64) -> Vec<(String, PoIndependenceSystem)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(4..=6);
            let g = rng.gen_range(1..=4);
            let s: u64 = rng.gen();
            (format!("rand-{i}-n{n}-g{g}-s{s}"), random_system(n, g, s))
        })
        .collect()
}
