//! Abstract simplicial complexes, h-cycles, and spanning h-acyclic subcomplexes.
//!
//! Conventions: a face of dimension `i` has `i` vertices; the empty face is
//! not stored; every declared vertex is a face. Faces are kept in scan order
//! (cardinality, then lexicographic on vertex ids), and a face's position in
//! that list is its element id in the face poset.

mod kruskal;
mod search;

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::poset::Poset;
use crate::subset::GroundSubset;

pub use kruskal::{ih_system, max_spanning_acyclic, max_spanning_acyclic_with, IhSystem, SpanningSubcomplex};
pub use search::{is_mod2_cycle, mod2_boundary_kernel};

/// Sorted vertex ids.
pub type Face = Vec<usize>;

const MAX_FACET_SIZE: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("facet list contains an empty facet")]
    EmptyFacet,
    #[error("facet has {0} vertices; at most {MAX_FACET_SIZE} are supported")]
    FacetTooLarge(usize),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("{0:?} is not a face of the complex")]
    NotAFace(Vec<String>),
    #[error("a face with {0} vertices bounds no h-cycle (needs h >= 2)")]
    DimensionTooSmall(usize),
    #[error("h-cycles need h >= 2, got {0}")]
    BadH(usize),
    #[error("cycles have different h ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("cycles share no face")]
    DisjointCycles,
    #[error("symmetric difference of identical cycles is empty")]
    Degenerate,
    #[error("weights are not order-reversing under containment: w({smaller}) < w({larger})")]
    WeightNotOrderReversing { smaller: String, larger: String },
    #[error("weight function covers {got} faces, complex has {expected}")]
    DomainMismatch { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    faces: Vec<Face>,
    index: HashMap<Face, usize>,
}

/// A set of `h`-faces in which every ridge of every member lies in exactly
/// one other member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HCycleWitness {
    pub h: usize,
    pub members: Vec<Face>,
}

impl SimplicialComplex {
    /// Downward closure of `facets` over the declared vertex labels.
    pub fn from_labels<S: AsRef<str>>(vertices: &[S], facets: &[Vec<S>]) -> Result<Self, SimplicialError> {
        let labels: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut lookup = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if lookup.insert(l.as_str(), i).is_some() {
                return Err(SimplicialError::DuplicateVertex(l.clone()));
            }
        }
        let facets = facets
            .iter()
            .map(|f| {
                f.iter()
                    .map(|v| {
                        lookup
                            .get(v.as_ref())
                            .copied()
                            .ok_or_else(|| SimplicialError::UnknownVertex(v.as_ref().to_string()))
                    })
                    .collect::<Result<Vec<usize>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_ids(labels, &facets)
    }

    /// Complex whose vertices are exactly those appearing in `facets`,
    /// labelled by their numbers.
    pub fn from_facets(facets: &[&[u32]]) -> Result<Self, SimplicialError> {
        let verts: BTreeSet<u32> = facets.iter().flat_map(|f| f.iter().copied()).collect();
        let labels: Vec<String> = verts.iter().map(|v| v.to_string()).collect();
        let facets: Vec<Vec<String>> = facets
            .iter()
            .map(|f| f.iter().map(|v| v.to_string()).collect())
            .collect();
        Self::from_labels(&labels, &facets)
    }

    /// `vertices` are labels for ids `0..n`; facets use those ids.
    pub fn from_ids(vertices: Vec<String>, facets: &[Vec<usize>]) -> Result<Self, SimplicialError> {
        let n = vertices.len();
        let mut all: BTreeSet<Face> = (0..n).map(|v| vec![v]).collect();
        for facet in facets {
            let f: BTreeSet<usize> = facet.iter().copied().collect();
            if f.is_empty() {
                return Err(SimplicialError::EmptyFacet);
            }
            if let Some(&bad) = f.iter().find(|&&v| v >= n) {
                return Err(SimplicialError::UnknownVertex(bad.to_string()));
            }
            if f.len() > MAX_FACET_SIZE {
                return Err(SimplicialError::FacetTooLarge(f.len()));
            }
            let f: Vec<usize> = f.into_iter().collect();
            if all.contains(&f) {
                continue;
            }
            for mask in 1u32..(1 << f.len()) {
                all.insert(
                    f.iter()
                        .enumerate()
                        .filter(|(i, _)| mask & (1 << i) != 0)
                        .map(|(_, &v)| v)
                        .collect(),
                );
            }
        }
        let mut faces: Vec<Face> = all.into_iter().collect();
        faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let index = faces.iter().cloned().zip(0..).collect();
        Ok(Self {
            vertices,
            faces,
            index,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &Face {
        &self.faces[id]
    }

    pub fn face_id(&self, face: &[usize]) -> Option<usize> {
        self.index.get(face).copied()
    }

    /// Face id from vertex labels in any order.
    pub fn face_id_by_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<usize, SimplicialError> {
        let not_face = || SimplicialError::NotAFace(labels.iter().map(|l| l.as_ref().to_string()).collect());
        let mut ids = Vec::with_capacity(labels.len());
        for l in labels {
            let v = self
                .vertices
                .iter()
                .position(|x| x == l.as_ref())
                .ok_or_else(not_face)?;
            ids.push(v);
        }
        ids.sort_unstable();
        ids.dedup();
        self.face_id(&ids).ok_or_else(not_face)
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Largest face cardinality (0 for the empty complex).
    pub fn dimension(&self) -> usize {
        self.faces.last().map_or(0, Vec::len)
    }

    /// Ids of the faces with `card` vertices.
    pub fn faces_of_cardinality(&self, card: usize) -> impl Iterator<Item = usize> + '_ {
        self.faces
            .iter()
            .enumerate()
            .filter(move |(_, f)| f.len() == card)
            .map(|(i, _)| i)
    }

    pub fn face_subset(&self, card: usize) -> GroundSubset {
        GroundSubset::from_ids(self.len(), self.faces_of_cardinality(card))
    }

    /// Vertex labels of a face, sorted as strings.
    pub fn face_labels(&self, face: &[usize]) -> Vec<String> {
        let mut ls: Vec<String> = face.iter().map(|&v| self.vertices[v].clone()).collect();
        ls.sort();
        ls
    }

    /// Comma-joined sorted vertex labels.
    pub fn face_key(&self, face: &[usize]) -> String {
        self.face_labels(face).join(",")
    }

    /// Faces ordered by reverse containment: `F <= G` iff `G ⊆ F`.
    /// Up-sets of this poset are exactly the subcomplexes.
    pub fn face_poset(&self) -> Poset {
        let mut pairs = Vec::new();
        for (i, f) in self.faces.iter().enumerate() {
            if f.len() < 2 {
                continue;
            }
            for skip in 0..f.len() {
                let g = without_index(f, skip);
                pairs.push((i, self.index[&g]));
            }
        }
        let labels = self.faces.iter().map(|f| self.face_key(f)).collect();
        Poset::from_id_relation(labels, &pairs).expect("containment is a partial order")
    }

    /// Downward closed under nonempty containment.
    pub fn is_subcomplex(&self, s: &GroundSubset) -> bool {
        s.iter().all(|i| {
            let f = &self.faces[i];
            f.len() < 2 || (0..f.len()).all(|k| s.contains(self.index[&without_index(f, k)]))
        })
    }

    /// All vertex faces belong to `s`.
    pub fn is_spanning(&self, s: &GroundSubset) -> bool {
        self.faces_of_cardinality(1).all(|i| s.contains(i))
    }

    /// Literal check of the h-cycle definition on a set of faces.
    pub fn is_h_cycle(&self, members: &[Face], h: usize) -> bool {
        let set: BTreeSet<&Face> = members.iter().collect();
        if h < 2 || set.is_empty() {
            return false;
        }
        if !set.iter().all(|f| f.len() == h && self.index.contains_key(*f)) {
            return false;
        }
        set.iter().all(|f| {
            f.iter().all(|x| {
                let partners = set
                    .iter()
                    .filter(|g| {
                        let meet = intersect(f, g);
                        meet.len() + 1 == f.len() && !meet.contains(x)
                    })
                    .count();
                partners == 1
            })
        })
    }

    /// `<F>`: the `(|F| - 1)`-faces of `F`.
    pub fn boundary_cycle(&self, face: &[usize]) -> Result<HCycleWitness, SimplicialError> {
        if self.face_id(face).is_none() {
            return Err(SimplicialError::NotAFace(
                face.iter().map(|&v| self.vertices.get(v).cloned().unwrap_or_else(|| v.to_string())).collect(),
            ));
        }
        if face.len() < 3 {
            return Err(SimplicialError::DimensionTooSmall(face.len()));
        }
        let mut members: Vec<Face> = (0..face.len()).map(|k| without_index(face, k)).collect();
        members.sort();
        Ok(HCycleWitness {
            h: face.len() - 1,
            members,
        })
    }

    /// First h-cycle among the `h`-faces of `sub`, or `None` if `sub` is
    /// h-acyclic. Only the `h`-faces of `sub` are consulted.
    pub fn contains_h_cycle(&self, sub: &GroundSubset, h: usize) -> Option<HCycleWitness> {
        if h < 2 {
            return None;
        }
        let hfaces: Vec<usize> = sub.iter().filter(|&i| self.faces[i].len() == h).collect();
        search::find_cycle(self, &hfaces, None).map(|ids| self.witness(h, ids))
    }

    /// Like [`Self::contains_h_cycle`], restricted to cycles through `face`.
    pub fn contains_h_cycle_through(&self, sub: &GroundSubset, h: usize, face: usize) -> Option<HCycleWitness> {
        if h < 2 || self.faces[face].len() != h || !sub.contains(face) {
            return None;
        }
        let hfaces: Vec<usize> = sub.iter().filter(|&i| self.faces[i].len() == h).collect();
        search::find_cycle(self, &hfaces, Some(face)).map(|ids| self.witness(h, ids))
    }

    fn witness(&self, h: usize, ids: Vec<usize>) -> HCycleWitness {
        let mut members: Vec<Face> = ids.into_iter().map(|i| self.faces[i].clone()).collect();
        members.sort();
        HCycleWitness { h, members }
    }
}

impl HCycleWitness {
    /// Face ids of the members in `c`.
    pub fn ids(&self, c: &SimplicialComplex) -> Vec<usize> {
        self.members.iter().filter_map(|f| c.face_id(f)).collect()
    }
}

/// `(D1 ∪ D2) \ (D1 ∩ D2)`, sorted.
pub fn symmetric_difference(d1: &HCycleWitness, d2: &HCycleWitness) -> Result<Vec<Face>, SimplicialError> {
    if d1.h != d2.h {
        return Err(SimplicialError::DimensionMismatch(d1.h, d2.h));
    }
    let a: BTreeSet<&Face> = d1.members.iter().collect();
    let b: BTreeSet<&Face> = d2.members.iter().collect();
    if a.is_disjoint(&b) {
        return Err(SimplicialError::DisjointCycles);
    }
    let out: Vec<Face> = a.symmetric_difference(&b).map(|f| (*f).clone()).collect();
    if out.is_empty() {
        return Err(SimplicialError::Degenerate);
    }
    Ok(out)
}

pub(crate) fn without_index(f: &[usize], k: usize) -> Face {
    f.iter()
        .enumerate()
        .filter(|&(i, _)| i != k)
        .map(|(_, &v)| v)
        .collect()
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|v| b.binary_search(v).is_ok()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path() -> SimplicialComplex {
        SimplicialComplex::from_facets(&[&[1, 2], &[2, 3]]).unwrap()
    }

    fn triangle_graph() -> SimplicialComplex {
        SimplicialComplex::from_facets(&[&[1, 2], &[1, 3], &[2, 3]]).unwrap()
    }

    fn keys(c: &SimplicialComplex, faces: &[Face]) -> Vec<String> {
        faces.iter().map(|f| c.face_key(f)).collect()
    }

    #[test]
    fn build_examples() {
        let p = path();
        assert_eq!(keys(&p, p.faces()), ["1", "2", "3", "1,2", "2,3"]);
        assert_eq!(p.dimension(), 2);
        let t = SimplicialComplex::from_facets(&[&[1, 2, 3]]).unwrap();
        assert_eq!(t.len(), 7);
        assert_eq!(t.dimension(), 3);
        let v = SimplicialComplex::from_facets(&[&[1]]).unwrap();
        assert_eq!((v.len(), v.dimension()), (1, 1));
        assert_eq!(
            SimplicialComplex::from_ids(vec!["a".into()], &[vec![]]),
            Err(SimplicialError::EmptyFacet)
        );
    }

    #[test]
    fn closing_is_idempotent() {
        let t = SimplicialComplex::from_facets(&[&[1, 2, 3]]).unwrap();
        let facets: Vec<Vec<String>> = t.faces().iter().map(|f| t.face_labels(f)).collect();
        let again = SimplicialComplex::from_labels(t.vertices(), &facets).unwrap();
        assert_eq!(again.faces(), t.faces());
    }

    #[test]
    fn face_poset_orientation() {
        let p = path();
        let poset = p.face_poset();
        let maxes = poset.max_elements(&poset.full_subset());
        assert_eq!(poset.labels_of(&maxes), ["1", "2", "3"]);
        let e = p.face_id_by_labels(&["1", "2"]).unwrap();
        let v = p.face_id_by_labels(&["1"]).unwrap();
        assert!(poset.leq(e, v));
        assert!(!poset.leq(v, e));
    }

    #[test]
    fn up_sets_are_subcomplexes() {
        for c in [
            path(),
            triangle_graph(),
            SimplicialComplex::from_facets(&[&[1, 2, 3], &[3, 4]]).unwrap(),
            SimplicialComplex::from_facets(&[&[1, 2, 3], &[2, 3, 4], &[1, 4]]).unwrap(),
        ] {
            let poset = c.face_poset();
            let n = c.len();
            let ups = poset.enumerate_up_sets(n).unwrap();
            let brute: Vec<_> = (0u64..1 << n)
                .map(|m| GroundSubset::from_ids(n, (0..n).filter(|&i| m & (1 << i) != 0)))
                .filter(|s| c.is_subcomplex(s))
                .collect();
            assert_eq!(ups.len(), brute.len());
            assert!(ups.iter().all(|s| c.is_subcomplex(s)));
        }
    }

    #[test]
    fn h_cycle_examples() {
        let t = triangle_graph();
        let edges = vec![vec![0, 1], vec![0, 2], vec![1, 2]];
        assert!(t.is_h_cycle(&edges, 2));
        assert!(!t.is_h_cycle(&[vec![0, 1], vec![1, 2]], 2));
        let two = SimplicialComplex::from_facets(&[&[1, 2], &[1, 3], &[2, 3], &[4, 5], &[4, 6], &[5, 6]]).unwrap();
        let members: Vec<Face> = two.faces_of_cardinality(2).map(|i| two.face(i).clone()).collect();
        assert!(two.is_h_cycle(&members, 2));
        assert!(!t.is_h_cycle(&[], 2));
    }

    #[test]
    fn boundary_examples() {
        let t = SimplicialComplex::from_facets(&[&[1, 2, 3, 4]]).unwrap();
        let tri = t.face_id_by_labels(&["1", "2", "3"]).unwrap();
        let b = t.boundary_cycle(t.face(tri)).unwrap();
        assert_eq!(b.h, 2);
        assert_eq!(keys(&t, &b.members), ["1,2", "1,3", "2,3"]);
        assert!(t.is_h_cycle(&b.members, 2));
        let tet = t.boundary_cycle(&[0, 1, 2, 3]).unwrap();
        assert_eq!((tet.h, tet.members.len()), (3, 4));
        assert!(t.is_h_cycle(&tet.members, 3));
        assert_eq!(t.boundary_cycle(&[0, 1]), Err(SimplicialError::DimensionTooSmall(2)));
        let p = path();
        assert!(matches!(p.boundary_cycle(&[0, 2]), Err(SimplicialError::NotAFace(_))));
    }

    #[test]
    fn contains_examples() {
        let p = path();
        assert_eq!(p.contains_h_cycle(&GroundSubset::full(p.len()), 2), None);
        let t = triangle_graph();
        let w = t.contains_h_cycle(&GroundSubset::full(t.len()), 2).unwrap();
        assert_eq!(keys(&t, &w.members), ["1,2", "1,3", "2,3"]);
        // All four triangles on four vertices, no solid tetrahedron.
        let hollow = SimplicialComplex::from_facets(&[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]).unwrap();
        let w = hollow.contains_h_cycle(&GroundSubset::full(hollow.len()), 3).unwrap();
        let solid = SimplicialComplex::from_facets(&[&[1, 2, 3, 4]]).unwrap();
        assert_eq!(w, solid.boundary_cycle(&[0, 1, 2, 3]).unwrap());
    }

    #[test]
    fn symmetric_difference_examples() {
        let c = SimplicialComplex::from_facets(&[&[1, 2, 3], &[1, 2, 4], &[5, 6, 7]]).unwrap();
        let d1 = c.boundary_cycle(&[0, 1, 2]).unwrap();
        let d2 = c.boundary_cycle(&[0, 1, 3]).unwrap();
        let d = symmetric_difference(&d1, &d2).unwrap();
        assert_eq!(keys(&c, &d), ["1,3", "1,4", "2,3", "2,4"]);
        assert!(c.is_h_cycle(&d, 2));
        assert_eq!(symmetric_difference(&d1, &d1), Err(SimplicialError::Degenerate));
        let d3 = c.boundary_cycle(&[4, 5, 6]).unwrap();
        assert_eq!(symmetric_difference(&d1, &d3), Err(SimplicialError::DisjointCycles));
        let tet = SimplicialComplex::from_facets(&[&[1, 2, 3, 4]]).unwrap();
        let d4 = tet.boundary_cycle(&[0, 1, 2, 3]).unwrap();
        assert_eq!(symmetric_difference(&d1, &d4), Err(SimplicialError::DimensionMismatch(2, 3)));
    }

    #[test]
    fn symmetric_difference_can_pinch() {
        // The 5-cycle 1-6-3-2-4-1 and the triangle 2-4-6 share the edge {2,4};
        // their symmetric difference meets vertex 6 in four edges, so it is an
        // even (mod-2) cycle but not an h-cycle.
        let c = SimplicialComplex::from_facets(&[&[1, 6], &[6, 3], &[3, 2], &[2, 4], &[4, 1], &[2, 4, 6]]).unwrap();
        let id = |a: &str, b: &str| c.face(c.face_id_by_labels(&[a, b]).unwrap()).clone();
        let mut five = vec![id("1", "6"), id("3", "6"), id("2", "3"), id("2", "4"), id("1", "4")];
        five.sort();
        assert!(c.is_h_cycle(&five, 2));
        let d1 = HCycleWitness { h: 2, members: five };
        let tri = c.face_id_by_labels(&["2", "4", "6"]).unwrap();
        let d2 = c.boundary_cycle(c.face(tri)).unwrap();
        let d = symmetric_difference(&d1, &d2).unwrap();
        assert!(!c.is_h_cycle(&d, 2));
        let ids: Vec<usize> = d.iter().map(|f| c.face_id(f).unwrap()).collect();
        assert!(is_mod2_cycle(&c, &ids));
    }
}
