//! Edge-disjoint realizations of tree degree sequences.
//!
//! The crate decides, constructs, counts, estimates and samples packings of
//! tree degree sequences:
//!
//! * [`degseq`]: degree sequences, Erdős–Gallai graphicality, shape predicates.
//! * [`trees`]: labeled trees, Prüfer codes, exact counting, enumeration and
//!   uniform generation with a prescribed degree sequence.
//! * [`packing`]: constructive packers (disjoint Hamiltonian paths, caterpillar
//!   packing, complementary-leaf packing, m-tree packing) and the Kundu
//!   decision predicate.
//! * [`sampling`]: exact expected-overlap analysis, Monte Carlo count
//!   estimation, almost-uniform sampling of disjoint pairs and brute-force
//!   oracles.
//! * [`reductions`]: the answer-preserving gadget transformations that turn a
//!   bipartite packing instance into one whose first sequence is a tree
//!   sequence, with an exhaustive decider for certification.
//!
//! Vertices are 1-based everywhere.
//!
//! Randomized operations take an explicit `u64` seed and draw from
//! [`rand_chacha::ChaCha8Rng`]; a given seed always reproduces the same output.

pub mod degseq;
mod error;
pub mod packing;
pub mod rational;
pub mod reductions;
pub mod sampling;
pub mod trees;

pub use degseq::{DegreeMatrix, DegreeSequence, SequenceClass};
pub use error::{Error, Result};
pub use packing::{MultiInstance, PackingResult};
pub use sampling::{EstimateReport, PairAnalysis};
pub use trees::{LabeledTree, PruferCode};
