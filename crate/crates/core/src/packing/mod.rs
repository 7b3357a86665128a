//! Constructive packers for tree degree sequences.
//!
//! Every packer checks its own output (positional degrees and pairwise
//! edge-disjointness) before returning and reports [`Error::Internal`] rather
//! than hand back a bad packing.

mod caterpillar;
mod complementary;
mod hamiltonian;
mod multi;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::degseq::DegreeSequence;
use crate::error::{check_dims, Error, Result};
use crate::trees::{count_common, Edge, LabeledTree};

pub use crate::trees::common_edges;
pub use caterpillar::pack_caterpillars;
pub(crate) use complementary::pack_complementary_with;
pub use complementary::{complementary_leaf_packable, pack_complementary_leaves};
pub use hamiltonian::{disjoint_hamiltonian_paths, hamiltonian_path_orders};
pub use multi::{nonstar_restricted_tree, pack_multi, pack_multi_logged, MultiInstance};

/// Pairwise edge-disjoint trees on a common vertex set, tree `k` realizing
/// the `k`-th input sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackingResult {
    n: usize,
    trees: Vec<LabeledTree>,
}

impl PackingResult {
    /// Wraps `trees` after checking them against `rows`.
    pub fn verified(trees: Vec<LabeledTree>, rows: &[&DegreeSequence]) -> Result<Self> {
        let n = rows.first().map_or(0, |r| r.len());
        let result = PackingResult { n, trees };
        result.verify(rows)?;
        Ok(result)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn trees(&self) -> &[LabeledTree] {
        &self.trees
    }

    pub fn into_trees(self) -> Vec<LabeledTree> {
        self.trees
    }

    /// Checks positional degrees and pairwise disjointness.
    pub fn verify(&self, rows: &[&DegreeSequence]) -> Result<()> {
        if self.trees.len() != rows.len() {
            return Err(Error::Internal(format!(
                "{} trees for {} sequences",
                self.trees.len(),
                rows.len()
            )));
        }
        for (k, (tree, row)) in self.trees.iter().zip(rows).enumerate() {
            if !tree.realizes(row) {
                return Err(Error::Internal(format!(
                    "tree {k} has degrees {} instead of {row}",
                    tree.degree_sequence()
                )));
            }
        }
        for a in 0..self.trees.len() {
            for b in a + 1..self.trees.len() {
                let shared = count_common(self.trees[a].edges(), self.trees[b].edges());
                if shared > 0 {
                    return Err(Error::Internal(format!(
                        "trees {a} and {b} share {shared} edge(s)"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `{"n": int, "trees": [[[u,v],...], ...]}`
impl Serialize for PackingResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let trees: Vec<&[Edge]> = self.trees.iter().map(LabeledTree::edges).collect();
        let mut st = s.serialize_struct("PackingResult", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("trees", &trees)?;
        st.end()
    }
}

pub(crate) fn require_pair(d: &DegreeSequence, f: &DegreeSequence) -> Result<()> {
    check_dims(d.len(), f.len())?;
    d.require_tree("D")?;
    f.require_tree("F")
}

/// Two tree sequences have edge-disjoint tree realizations iff `D + F` is
/// graphical (Kundu). Decision only.
pub fn kundu_packable(d: &DegreeSequence, f: &DegreeSequence) -> Result<bool> {
    require_pair(d, f)?;
    Ok(d.sum_with(f)?.is_graphical())
}
