//! Greedy optimization over poset matroids.
//!
//! PGREEDY picks, at each step, a maximum-weight element among the maximal
//! remaining elements of a poset and keeps it when independence survives.
//! On a po-independence system it is optimal for every order-preserving
//! weight exactly when the system is a poset matroid. This crate runs the
//! algorithm, decides the axioms, builds the weights that defeat it on
//! non-matroids, and applies it to spanning h-acyclic subcomplexes of
//! abstract simplicial complexes.

pub mod cli;
pub mod greedy;
pub mod io;
pub mod poset;
pub mod simplicial;
pub mod subset;
pub mod system;
pub mod verify;
pub mod weight;

pub use greedy::{greedy, pgreedy, pgreedy_with, GreedyError, GreedyOptions, GreedyTrace, Step, StepOutcome, TieBreak};
pub use poset::{Poset, PosetError, DEFAULT_CAP};
pub use subset::GroundSubset;
pub use system::{AxiomViolation, Family, PoIndependenceSystem, SystemError};
pub use weight::{parse_rational, Rational, WeightError, WeightFunction};
