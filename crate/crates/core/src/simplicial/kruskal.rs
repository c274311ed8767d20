//! The system of h-acyclic subcomplexes and its greedy maximum.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::{SimplicialComplex, SimplicialError};
use crate::greedy::{pgreedy_with, GreedyOptions, GreedyTrace};
use crate::subset::GroundSubset;
use crate::system::PoIndependenceSystem;
use crate::weight::WeightFunction;

/// Subcomplexes of `complex` containing no `h`-cycle, as a po-independence
/// system over the face poset.
#[derive(Debug, Clone)]
pub struct IhSystem {
    pub complex: Arc<SimplicialComplex>,
    pub h: usize,
    pub system: PoIndependenceSystem,
}

/// Acyclicity verdicts keyed by the set of `h`-faces, which is all a verdict
/// depends on.
struct AcyclicityMemo {
    complex: Arc<SimplicialComplex>,
    h: usize,
    hmask: GroundSubset,
    verdicts: RwLock<HashMap<GroundSubset, bool>>,
}

impl AcyclicityMemo {
    fn is_acyclic(&self, s: &GroundSubset) -> bool {
        let key = s.intersection(&self.hmask);
        if let Some(&v) = self.verdicts.read().unwrap().get(&key) {
            return v;
        }
        let verdict = self.decide(&key);
        self.verdicts.write().unwrap().insert(key, verdict);
        verdict
    }

    fn decide(&self, key: &GroundSubset) -> bool {
        if key.len() < 3 {
            return true;
        }
        // Growing an acyclic set by one face: only cycles through it matter.
        let known_acyclic = {
            let verdicts = self.verdicts.read().unwrap();
            key.iter().find(|&f| verdicts.get(&key.without(f)) == Some(&true))
        };
        match known_acyclic {
            Some(f) => self.complex.contains_h_cycle_through(key, self.h, f).is_none(),
            None => self.complex.contains_h_cycle(key, self.h).is_none(),
        }
    }
}

/// Builds `I_h`. Any `h >= 2` is accepted; when the complex has no `h`-faces
/// every subcomplex is independent.
pub fn ih_system(c: &SimplicialComplex, h: usize) -> Result<IhSystem, SimplicialError> {
    if h < 2 {
        return Err(SimplicialError::BadH(h));
    }
    let complex = Arc::new(c.clone());
    let memo = AcyclicityMemo {
        complex: Arc::clone(&complex),
        h,
        hmask: c.face_subset(h),
        verdicts: RwLock::new(HashMap::new()),
    };
    let system = PoIndependenceSystem::oracle(c.face_poset(), Arc::new(move |s| memo.is_acyclic(s)));
    Ok(IhSystem { complex, h, system })
}

#[derive(Debug, Clone)]
pub struct SpanningSubcomplex {
    pub faces: GroundSubset,
    pub trace: GreedyTrace,
}

/// PGREEDY on `I_h` for a weight that is order-reversing under containment.
pub fn max_spanning_acyclic(
    c: &SimplicialComplex,
    h: usize,
    w: &WeightFunction,
) -> Result<SpanningSubcomplex, SimplicialError> {
    max_spanning_acyclic_with(c, h, w, true)
}

/// As [`max_spanning_acyclic`]; `check_order = false` skips weight validation
/// and voids the optimality guarantee.
pub fn max_spanning_acyclic_with(
    c: &SimplicialComplex,
    h: usize,
    w: &WeightFunction,
    check_order: bool,
) -> Result<SpanningSubcomplex, SimplicialError> {
    let ih = ih_system(c, h)?;
    if w.len() != c.len() {
        return Err(SimplicialError::DomainMismatch {
            expected: c.len(),
            got: w.len(),
        });
    }
    if check_order {
        // Order-reversing under containment is order-preserving on the face poset.
        let poset = ih.system.poset();
        if !poset.is_order_preserving(w) {
            let (big, small) = (0..c.len())
                .find_map(|x| poset.principal_up(x).iter().find(|&y| w[x] > w[y]).map(|y| (x, y)))
                .expect("a violating pair exists");
            return Err(SimplicialError::WeightNotOrderReversing {
                smaller: c.face_key(c.face(small)),
                larger: c.face_key(c.face(big)),
            });
        }
    }
    let opts = GreedyOptions {
        check_order: false,
        ..Default::default()
    };
    let trace = pgreedy_with(&ih.system, w, opts).expect("weight length checked above");
    Ok(SpanningSubcomplex {
        faces: trace.result.clone(),
        trace,
    })
}
