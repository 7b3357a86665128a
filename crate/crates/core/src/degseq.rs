//! Degree sequences and the predicates every other module builds on.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{check_dims, domain, Error, Result};

/// Degrees indexed by vertex, 1-based: `degree(1)` is the first entry.
///
/// Identity is positional, so `(2,1,1)` and `(1,2,1)` are different sequences.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct DegreeSequence(Vec<usize>);

/// Most specific shape of a degree sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SequenceClass {
    NotTree,
    Path,
    Star,
    OtherTree,
}

impl DegreeSequence {
    pub fn new(degrees: Vec<usize>) -> Result<Self> {
        if degrees.is_empty() {
            return domain("a degree sequence needs at least one vertex");
        }
        Ok(DegreeSequence(degrees))
    }

    /// All-zero sequence on `n` vertices.
    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for the `len`/`is_empty` pairing clippy expects.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree of vertex `v` (1-based). Panics when `v` is out of range.
    pub fn degree(&self, v: usize) -> usize {
        self.0[v - 1]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn max(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// `(vertex, degree)` pairs with 1-based vertices.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().enumerate().map(|(i, &d)| (i + 1, d))
    }

    /// Vertices of degree greater than one.
    pub fn internal_vertices(&self) -> Vec<usize> {
        self.iter()
            .filter(|&(_, d)| d > 1)
            .map(|(v, _)| v)
            .collect()
    }

    /// Vertices of degree exactly one.
    pub fn leaves(&self) -> Vec<usize> {
        self.iter()
            .filter(|&(_, d)| d == 1)
            .map(|(v, _)| v)
            .collect()
    }

    /// Erdős–Gallai test on the descending sort.
    pub fn is_graphical(&self) -> bool {
        is_graphical(&self.0)
    }

    /// Positive degrees summing to `2n - 2` on at least two vertices.
    pub fn is_tree_sequence(&self) -> bool {
        let n = self.len();
        n >= 2 && self.0.iter().all(|&d| d >= 1) && self.sum() == 2 * n - 2
    }

    /// Two vertices of degree one, everything else degree two.
    fn has_path_shape(&self) -> bool {
        self.0.iter().filter(|&&d| d == 1).count() == 2 && self.0.iter().all(|&d| d == 1 || d == 2)
    }

    /// Classifies the sequence. Sequences that are both a path and a star
    /// (`n <= 3`) report [`SequenceClass::Star`].
    pub fn classify(&self) -> SequenceClass {
        if !self.is_tree_sequence() {
            SequenceClass::NotTree
        } else if self.0.contains(&(self.len() - 1)) {
            SequenceClass::Star
        } else if self.has_path_shape() {
            SequenceClass::Path
        } else {
            SequenceClass::OtherTree
        }
    }

    pub fn is_star(&self) -> bool {
        self.classify() == SequenceClass::Star
    }

    pub fn is_path(&self) -> bool {
        self.classify() == SequenceClass::Path
    }

    /// Positionwise sum.
    pub fn sum_with(&self, other: &DegreeSequence) -> Result<DegreeSequence> {
        check_dims(self.len(), other.len())?;
        Ok(DegreeSequence(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub(crate) fn require_tree(&self, what: &str) -> Result<()> {
        if self.is_tree_sequence() {
            Ok(())
        } else {
            domain(format!("{what} = {self} is not a tree degree sequence"))
        }
    }
}

/// Positionwise sum of two sequences of equal length.
pub fn sum_sequences(d: &DegreeSequence, f: &DegreeSequence) -> Result<DegreeSequence> {
    d.sum_with(f)
}

/// Erdős–Gallai: the sum is even and for every `k`,
/// `sum_{i<=k} d_i <= k(k-1) + sum_{i>k} min(d_i, k)` on the descending sort.
pub fn is_graphical(degrees: &[usize]) -> bool {
    let total: usize = degrees.iter().sum();
    if total % 2 == 1 {
        return false;
    }
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut prefix = 0usize;
    for k in 1..=sorted.len() {
        prefix += sorted[k - 1];
        let tail: usize = sorted[k..].iter().map(|&d| d.min(k)).sum();
        if prefix > k * (k - 1) + tail {
            return false;
        }
    }
    true
}

impl TryFrom<Vec<usize>> for DegreeSequence {
    type Error = Error;

    fn try_from(value: Vec<usize>) -> Result<Self> {
        DegreeSequence::new(value)
    }
}

impl From<DegreeSequence> for Vec<usize> {
    fn from(value: DegreeSequence) -> Self {
        value.0
    }
}

impl fmt::Display for SequenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SequenceClass::NotTree => "not-tree",
            SequenceClass::Path => "path",
            SequenceClass::Star => "star",
            SequenceClass::OtherTree => "other-tree",
        })
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Parses the comma-separated text form, e.g. `2,2,1,1`.
impl FromStr for DegreeSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let degrees = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<usize>()
                    .map_err(|_| Error::Domain(format!("invalid degree {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        DegreeSequence::new(degrees)
    }
}

/// Rows of degree sequences on a shared vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<DegreeSequence>", into = "Vec<DegreeSequence>")]
pub struct DegreeMatrix {
    rows: Vec<DegreeSequence>,
}

impl DegreeMatrix {
    pub fn new(rows: Vec<DegreeSequence>) -> Result<Self> {
        let Some(first) = rows.first() else {
            return domain("a degree matrix needs at least one row");
        };
        let n = first.len();
        for row in &rows[1..] {
            check_dims(n, row.len())?;
        }
        Ok(DegreeMatrix { rows })
    }

    pub fn rows(&self) -> &[DegreeSequence] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    pub fn max_entry(&self) -> usize {
        self.rows.iter().map(DegreeSequence::max).max().unwrap_or(0)
    }
}

impl TryFrom<Vec<DegreeSequence>> for DegreeMatrix {
    type Error = Error;

    fn try_from(rows: Vec<DegreeSequence>) -> Result<Self> {
        DegreeMatrix::new(rows)
    }
}

impl From<DegreeMatrix> for Vec<DegreeSequence> {
    fn from(value: DegreeMatrix) -> Self {
        value.rows
    }
}
