//! h-cycle detection.
//!
//! Every h-cycle has ridge degrees in {0, 2}, so its indicator vector lies in
//! the kernel of the h-face/ridge incidence matrix over GF(2). Faces outside
//! the support of that kernel can never be in a cycle, and an empty kernel
//! settles the question outright. Even degrees do not imply degree exactly 2,
//! so the remaining candidates go through a backtracking search that closes
//! one open ridge at a time.

use std::collections::HashMap;

use super::{without_index, Face, SimplicialComplex};
use crate::subset::GroundSubset;

struct Incidence {
    /// Face ids, ascending.
    faces: Vec<usize>,
    /// Ridge ids of each local face.
    ridges: Vec<Vec<usize>>,
    /// Local faces containing each ridge.
    cofaces: Vec<Vec<usize>>,
}

impl Incidence {
    fn new(c: &SimplicialComplex, faces: &[usize]) -> Self {
        let mut ids: HashMap<Face, usize> = HashMap::new();
        let mut cofaces: Vec<Vec<usize>> = Vec::new();
        let mut ridges = Vec::with_capacity(faces.len());
        for (local, &f) in faces.iter().enumerate() {
            let face = c.face(f);
            let rs: Vec<usize> = (0..face.len())
                .map(|k| {
                    let r = without_index(face, k);
                    let next = ids.len();
                    let id = *ids.entry(r).or_insert(next);
                    if id == cofaces.len() {
                        cofaces.push(Vec::new());
                    }
                    cofaces[id].push(local);
                    id
                })
                .collect();
            ridges.push(rs);
        }
        Self {
            faces: faces.to_vec(),
            ridges,
            cofaces,
        }
    }

    /// Basis of the GF(2) kernel, each vector as a set of local faces.
    fn kernel(&self) -> Vec<GroundSubset> {
        let nr = self.cofaces.len();
        let nf = self.faces.len();
        let mut pivots: Vec<Option<(GroundSubset, GroundSubset)>> = vec![None; nr];
        let mut basis = Vec::new();
        for (local, rs) in self.ridges.iter().enumerate() {
            let mut col = GroundSubset::from_ids(nr, rs.iter().copied());
            let mut combo = GroundSubset::from_ids(nf, [local]);
            loop {
                let Some(p) = col.first() else {
                    basis.push(combo);
                    break;
                };
                match &pivots[p] {
                    Some((pc, pm)) => {
                        col = col.symmetric_difference(pc);
                        combo = combo.symmetric_difference(pm);
                    }
                    None => {
                        pivots[p] = Some((col, combo));
                        break;
                    }
                }
            }
        }
        basis
    }
}

/// GF(2) kernel basis of the incidence matrix of `faces` (all of one
/// cardinality), each vector as sorted face ids.
pub fn mod2_boundary_kernel(c: &SimplicialComplex, faces: &[usize]) -> Vec<Vec<usize>> {
    let mut sorted = faces.to_vec();
    sorted.sort_unstable();
    let inc = Incidence::new(c, &sorted);
    inc.kernel()
        .iter()
        .map(|v| v.iter().map(|l| inc.faces[l]).collect())
        .collect()
}

/// Every ridge of the given faces lies in an even number of them, i.e. the
/// indicator vector is in the GF(2) boundary kernel.
pub fn is_mod2_cycle(c: &SimplicialComplex, faces: &[usize]) -> bool {
    let inc = Incidence::new(c, faces);
    inc.cofaces.iter().all(|cf| cf.len() % 2 == 0)
}

/// Finds a nonempty set of faces whose ridges all have degree exactly 2.
///
/// Seeds are tried in ascending face id, each as the smallest member of the
/// cycle; with `through` set, only that seed is tried and every other face is
/// allowed. Returns face ids.
pub(super) fn find_cycle(c: &SimplicialComplex, faces: &[usize], through: Option<usize>) -> Option<Vec<usize>> {
    if faces.len() < 2 {
        return None;
    }
    let inc = Incidence::new(c, faces);
    let mut support = GroundSubset::empty(faces.len());
    for v in inc.kernel() {
        support.union_with(&v);
    }
    if support.is_empty() {
        return None;
    }
    let seeds: Vec<usize> = match through {
        Some(f) => {
            let local = inc.faces.binary_search(&f).ok()?;
            if !support.contains(local) {
                return None;
            }
            vec![local]
        }
        None => support.iter().collect(),
    };
    for seed in seeds {
        let mut allowed = support.clone();
        if through.is_none() {
            for l in 0..seed {
                allowed.remove(l);
            }
        }
        let mut state = Search {
            inc: &inc,
            allowed,
            chosen: Vec::new(),
            degree: vec![0; inc.cofaces.len()],
        };
        state.add(seed);
        if state.extend() {
            let mut ids: Vec<usize> = state.chosen.iter().map(|&l| inc.faces[l]).collect();
            ids.sort_unstable();
            return Some(ids);
        }
    }
    None
}

struct Search<'a> {
    inc: &'a Incidence,
    allowed: GroundSubset,
    chosen: Vec<usize>,
    degree: Vec<u8>,
}

impl Search<'_> {
    fn fits(&self, face: usize) -> bool {
        self.inc.ridges[face].iter().all(|&r| self.degree[r] < 2)
    }

    fn add(&mut self, face: usize) {
        self.allowed.remove(face);
        self.chosen.push(face);
        for &r in &self.inc.ridges[face] {
            self.degree[r] += 1;
        }
    }

    fn undo(&mut self, face: usize) {
        self.chosen.pop();
        for &r in &self.inc.ridges[face] {
            self.degree[r] -= 1;
        }
    }

    fn open_ridge(&self) -> Option<usize> {
        self.chosen
            .iter()
            .flat_map(|&f| self.inc.ridges[f].iter().copied())
            .filter(|&r| self.degree[r] == 1)
            .min()
    }

    fn extend(&mut self) -> bool {
        let Some(r) = self.open_ridge() else {
            return true;
        };
        let candidates: Vec<usize> = self.inc.cofaces[r]
            .iter()
            .copied()
            .filter(|&f| self.allowed.contains(f))
            .collect();
        let mut tried = Vec::new();
        for f in candidates {
            if self.fits(f) {
                self.add(f);
                if self.extend() {
                    return true;
                }
                self.undo(f);
            }
            // Later branches close `r` with a different face, so `f` is out.
            self.allowed.remove(f);
            tried.push(f);
        }
        for f in tried {
            self.allowed.insert(f);
        }
        false
    }
}
