use std::collections::{HashMap, HashSet};

use num_traits::Zero;
use poset_greedy::simplicial::{ih_system, is_mod2_cycle, Face, SimplicialComplex};
use poset_greedy::verify::{
    brute_force_optimum, exhaustive_systems, random_complex, random_corpus, random_system, random_weights, Witnesses,
};
use poset_greedy::weight::Rational;
use poset_greedy::{
    pgreedy, pgreedy_with, AxiomViolation, GreedyOptions, GroundSubset, PoIndependenceSystem, Poset, TieBreak,
    WeightFunction,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn axioms_agree(sys: &PoIndependenceSystem) -> bool {
    sys.axiom_ii_witness().unwrap().is_none() == sys.axiom_ii_prime_witness().unwrap().is_none()
}

#[test]
fn augmentation_axioms_agree_on_all_small_systems() {
    let corpus = exhaustive_systems(4);
    assert!(corpus.len() > 1000);
    for (id, sys) in &corpus {
        assert!(axioms_agree(sys), "{id}");
    }
}

#[test]
fn augmentation_axioms_agree_on_random_systems() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for i in 0..500 {
        let n = rng.gen_range(5..=7);
        let g = rng.gen_range(1..=5);
        let sys = random_system(n, g, rng.gen());
        assert!(axioms_agree(&sys), "random system {i}");
    }
}

/// Checks a violation directly against the definition.
fn assert_well_formed(sys: &PoIndependenceSystem, v: &AxiomViolation) {
    let p = sys.poset();
    let (a, b) = (v.a(), v.b());
    assert!(p.is_up_set(a) && p.is_up_set(b));
    assert!(sys.is_independent(a) && sys.is_independent(b));
    assert_eq!(b.len(), a.len() + 1);
    let k = a.len();
    let t = a.intersection(b).len();
    assert!(k > t);
    assert_eq!((v.k(), v.t()), (k, t));
    let diff = b.difference(a);
    for x in diff.iter() {
        let maximal = diff.iter().all(|y| y == x || !p.lt(x, y));
        if maximal {
            assert!(!sys.is_independent(&a.with(x)), "{x} augments A");
        }
    }
}

#[test]
fn violations_are_well_formed_and_defeat_greedy() {
    let mut corpus = exhaustive_systems(3);
    corpus.extend(random_corpus(300, 5));
    let mut seen = 0;
    for (id, sys) in &corpus {
        for v in [sys.axiom_ii_witness().unwrap(), sys.axiom_ii_prime_witness().unwrap()]
            .into_iter()
            .flatten()
        {
            assert_well_formed(sys, &v);
            let w = sys.adversarial_weight(&v).unwrap();
            assert!(sys.poset().is_order_preserving(&w), "{id}");
            let best = brute_force_optimum(sys, &w, Witnesses::First).unwrap().optimum;
            assert!(best >= w.total(v.b()));
            assert!(pgreedy(sys, &w).unwrap().total < best, "{id}");
            seen += 1;
        }
    }
    assert!(seen > 50);
}

/// Best weight over the family by plain bitmask scan.
fn mask_scan(n: usize, family: &HashSet<u32>, w: &[Rational]) -> Rational {
    (0u32..1 << n)
        .filter(|m| *m == 0 || family.contains(m))
        .map(|m| (0..n).filter(|&i| m & (1 << i) != 0).map(|i| w[i].clone()).sum())
        .max()
        .unwrap()
}

#[test]
fn brute_force_matches_mask_scan_on_antichains() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let n = rng.gen_range(1..=8);
        let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let p = Poset::antichain(&labels).unwrap();
        let masks: HashSet<u32> = (0..rng.gen_range(0..12)).map(|_| rng.gen_range(0..1u32 << n)).collect();
        let members = masks
            .iter()
            .map(|&m| GroundSubset::from_ids(n, (0..n).filter(|&i| m & (1 << i) != 0)));
        let sys = PoIndependenceSystem::explicit(p, members).unwrap();
        let w: Vec<Rational> = (0..n).map(|_| Rational::new(rng.gen_range(0..50).into(), 7.into())).collect();
        let report = brute_force_optimum(&sys, &WeightFunction::new(w.clone()).unwrap(), Witnesses::All).unwrap();
        assert_eq!(report.optimum, mask_scan(n, &masks, &w));
        for s in &report.witnesses {
            assert!(sys.is_independent(s));
        }
    }
}

fn matroid_corpus() -> Vec<(String, PoIndependenceSystem)> {
    random_corpus(200, 11)
        .into_iter()
        .filter(|(_, s)| s.is_poset_matroid().unwrap())
        .collect()
}

/// Replays a trace against the poset and the family.
fn assert_trace_valid(sys: &PoIndependenceSystem, w: &WeightFunction, opts: GreedyOptions) {
    let p = sys.poset();
    let t = pgreedy_with(sys, w, opts).unwrap();
    assert_eq!(t.steps.len(), p.len());
    let mut remaining = p.full_subset();
    let mut chosen = p.empty_subset();
    let mut last: Option<Rational> = None;
    for step in &t.steps {
        let m = step.element;
        assert!(remaining.contains(m));
        let candidates: Vec<usize> = remaining
            .iter()
            .filter(|&x| remaining.iter().all(|y| !p.lt(x, y)))
            .collect();
        assert!(candidates.contains(&m), "{m} is not maximal in the remaining set");
        assert!(candidates.iter().all(|&x| w[x] <= w[m]));
        assert_eq!(step.weight, w[m]);
        remaining.remove(m);
        let grown = chosen.with(m);
        assert_eq!(step.accepted(), sys.is_independent(&grown));
        if step.accepted() {
            chosen = grown;
            if let Some(prev) = &last {
                assert!(*prev >= w[m], "accepted weights increase");
            }
            last = Some(w[m].clone());
        }
        assert!(sys.is_independent(&chosen));
    }
    assert!(remaining.is_empty());
    assert_eq!(t.result, chosen);
    assert_eq!(t.total, w.total(&chosen));
}

#[test]
fn traces_replay_and_match_the_optimum_on_matroids() {
    let corpus = matroid_corpus();
    assert!(corpus.len() > 100);
    for (i, (id, sys)) in corpus.iter().enumerate() {
        for w in random_weights(sys.poset(), 20, i as u64) {
            for tie_break in [TieBreak::SmallestId, TieBreak::LargestId] {
                let opts = GreedyOptions {
                    tie_break,
                    ..Default::default()
                };
                assert_trace_valid(sys, &w, opts);
                let total = pgreedy_with(sys, &w, opts).unwrap().total;
                let best = brute_force_optimum(sys, &w, Witnesses::First).unwrap().optimum;
                assert_eq!(total, best, "{id}");
            }
        }
    }
}

fn arb_system() -> impl Strategy<Value = PoIndependenceSystem> {
    (1usize..=7, 0usize..=4, any::<u64>()).prop_map(|(n, g, seed)| random_system(n, g, seed))
}

proptest! {
    #[test]
    fn traces_replay_on_any_system(sys in arb_system(), seed in any::<u64>()) {
        let w = random_weights(sys.poset(), 1, seed).pop().unwrap();
        assert_trace_valid(&sys, &w, GreedyOptions::default());
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    if parent[x] != x {
        let r = find(parent, parent[x]);
        parent[x] = r;
    }
    parent[x]
}

fn is_forest(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    for &(u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

#[test]
fn acyclic_graph_subcomplexes_are_forests() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for _ in 0..40 {
        let n = rng.gen_range(2..=6);
        let facets: Vec<Vec<usize>> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| vec![u, v]))
            .filter(|_| rng.gen_bool(0.6))
            .collect();
        let c = SimplicialComplex::from_ids((0..n).map(|v| v.to_string()).collect(), &facets).unwrap();
        let sys = ih_system(&c, 2).unwrap().system.with_cap(c.len());
        let independent: HashSet<GroundSubset> = sys.independent_sets().unwrap().into_iter().collect();
        for s in c.face_poset().enumerate_up_sets(c.len()).unwrap() {
            let edges: Vec<(usize, usize)> = s
                .iter()
                .map(|f| c.face(f))
                .filter(|f| f.len() == 2)
                .map(|f| (f[0], f[1]))
                .collect();
            assert_eq!(independent.contains(&s), is_forest(n, &edges), "{edges:?}");
        }
    }
}

#[test]
fn cycle_witnesses_obey_the_ridge_law() {
    let mut found = 0;
    for seed in 0..300 {
        let c = random_complex(6, 5, 4, seed);
        for h in 2..=3 {
            let all = GroundSubset::full(c.len());
            let Some(wit) = c.contains_h_cycle(&all, h) else {
                continue;
            };
            found += 1;
            let mut degree: HashMap<Face, usize> = HashMap::new();
            for f in &wit.members {
                assert_eq!(f.len(), h);
                for k in 0..f.len() {
                    let mut r = f.clone();
                    r.remove(k);
                    *degree.entry(r).or_default() += 1;
                }
            }
            assert!(degree.values().all(|&d| d == 2), "seed {seed} h {h}");
            let ids = wit.ids(&c);
            assert!(is_mod2_cycle(&c, &ids));
            assert!(c.is_h_cycle(&wit.members, h));
        }
    }
    assert!(found > 100);
}

#[test]
fn zero_weight_greedy_is_optimal_everywhere() {
    for (_, sys) in random_corpus(50, 2) {
        let t = pgreedy(&sys, &WeightFunction::zero(sys.len())).unwrap();
        assert!(t.total.is_zero());
    }
}
