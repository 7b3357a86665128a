//! Labeled trees on vertices `1..=n`.

mod enumerate;
mod prufer;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::degseq::DegreeSequence;
use crate::error::{Error, Result};

pub use enumerate::{
    count_trees, edge_probability, enumerate_caterpillars, enumerate_trees, random_tree,
    random_tree_with, TreeEnumerator, TreeSampler,
};
pub use prufer::{prufer_decode, prufer_encode, PruferCode};

/// Unordered edge stored as `(min, max)`.
pub type Edge = (usize, usize);

pub(crate) fn edge(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A tree on `1..=n` with its edges kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "TreeJson")]
pub struct LabeledTree {
    n: usize,
    edges: Vec<Edge>,
}

#[derive(Deserialize)]
struct TreeJson {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<TreeJson> for LabeledTree {
    type Error = Error;

    fn try_from(raw: TreeJson) -> Result<Self> {
        LabeledTree::new(raw.n, raw.edges)
    }
}

impl LabeledTree {
    /// Validates that `edges` form a spanning tree of `1..=n`.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Structure("a tree needs at least one vertex".into()));
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::Structure(format!("edge ({u},{v}) outside 1..={n}")));
            }
            if u == v {
                return Err(Error::Structure(format!("self-loop at {u}")));
            }
            if !set.insert(edge(u, v)) {
                return Err(Error::Structure(format!("repeated edge ({u},{v})")));
            }
        }
        if set.len() != n - 1 {
            return Err(Error::Structure(format!(
                "{} edges on {n} vertices, expected {}",
                set.len(),
                n - 1
            )));
        }
        let tree = LabeledTree {
            n,
            edges: set.into_iter().collect(),
        };
        if !tree.is_connected() {
            return Err(Error::Structure("edges do not connect all vertices".into()));
        }
        Ok(tree)
    }

    /// Caller guarantees the edges form a tree.
    pub(crate) fn from_edges_unchecked(n: usize, mut edges: Vec<Edge>) -> Self {
        for e in edges.iter_mut() {
            *e = edge(e.0, e.1);
        }
        edges.sort_unstable();
        debug_assert_eq!(edges.len() + 1, n);
        LabeledTree { n, edges }
    }

    fn is_connected(&self) -> bool {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n + 1];
        let mut stack = vec![1];
        seen[1] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&edge(u, v)).is_ok()
    }

    /// Neighbor lists indexed by vertex; index 0 is unused.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n + 1];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Degree of every vertex, position `v - 1` for vertex `v`.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u - 1] += 1;
            deg[v - 1] += 1;
        }
        deg
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence::new(self.degrees()).expect("a tree has at least one vertex")
    }

    pub fn realizes(&self, d: &DegreeSequence) -> bool {
        self.n == d.len() && self.degrees() == d.degrees()
    }

    /// Edges with both endpoints in `vertices`.
    pub fn induced_edges(&self, vertices: &BTreeSet<usize>) -> Vec<Edge> {
        self.edges
            .iter()
            .copied()
            .filter(|(u, v)| vertices.contains(u) && vertices.contains(v))
            .collect()
    }

    /// True iff the non-leaf vertices induce a path (or there is at most one).
    pub fn is_caterpillar(&self) -> bool {
        let deg = self.degrees();
        let internal = |v: usize| deg[v - 1] >= 2;
        let mut spine_deg = vec![0usize; self.n + 1];
        for &(u, v) in &self.edges {
            if internal(u) && internal(v) {
                spine_deg[u] += 1;
                spine_deg[v] += 1;
            }
        }
        // Internal vertices of a tree induce a subtree, so max degree <= 2
        // means that subtree is a path.
        spine_deg.iter().all(|&d| d <= 2)
    }

    /// Bit `k` is set iff the tree contains the `k`-th pair of `1..=n` in
    /// row-major order. Only for `n <= 16`.
    pub(crate) fn edge_mask(&self) -> u128 {
        debug_assert!(self.n <= 16);
        self.edges
            .iter()
            .fold(0u128, |m, &(u, v)| m | 1u128 << pair_index(self.n, u, v))
    }
}

/// Row-major index of the pair `u < v` among all pairs of `1..=n`.
pub(crate) fn pair_index(n: usize, u: usize, v: usize) -> usize {
    let (u, v) = edge(u, v);
    let (u, v) = (u - 1, v - 1);
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

/// True if some vertex lies on every edge. An empty or single-edge set counts
/// as a star.
pub fn is_star_edges(edges: &[Edge]) -> bool {
    match edges {
        [] | [_] => true,
        [(a, b), rest @ ..] => [*a, *b]
            .iter()
            .any(|&c| rest.iter().all(|&(u, v)| u == c || v == c)),
    }
}

/// Edges shared by both trees.
pub fn common_edges(first: &LabeledTree, second: &LabeledTree) -> Result<Vec<Edge>> {
    crate::error::check_dims(first.n, second.n)?;
    let other: BTreeSet<Edge> = second.edges.iter().copied().collect();
    Ok(first
        .edges
        .iter()
        .copied()
        .filter(|e| other.contains(e))
        .collect())
}

/// Number of shared edges of two sorted edge lists.
pub(crate) fn count_common(a: &[Edge], b: &[Edge]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Text form: a header `n=<int>` followed by one `u v` edge per line.
impl fmt::Display for LabeledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        for (u, v) in &self.edges {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

impl FromStr for LabeledTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Domain("empty tree text".into()))?;
        let n = header
            .strip_prefix("n=")
            .and_then(|rest| rest.trim().parse::<usize>().ok())
            .ok_or_else(|| Error::Domain(format!("bad header {header:?}, expected n=<int>")))?;
        let edges = lines
            .map(|line| {
                let mut it = line.split_whitespace().map(str::parse::<usize>);
                match (it.next(), it.next(), it.next()) {
                    (Some(Ok(u)), Some(Ok(v)), None) => Ok((u, v)),
                    _ => Err(Error::Domain(format!("bad edge line {line:?}"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        LabeledTree::new(n, edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(order: &[usize]) -> LabeledTree {
        LabeledTree::new(order.len(), order.windows(2).map(|w| (w[0], w[1]))).unwrap()
    }

    #[test]
    fn validation() {
        assert!(LabeledTree::new(3, [(1, 2), (2, 3)]).is_ok());
        assert!(matches!(
            LabeledTree::new(3, [(1, 2)]),
            Err(Error::Structure(_))
        ));
        assert!(LabeledTree::new(4, [(1, 2), (2, 1), (3, 4)]).is_err());
        assert!(LabeledTree::new(4, [(1, 2), (3, 4), (1, 1)]).is_err());
        assert!(LabeledTree::new(4, [(1, 2), (2, 3), (1, 3)]).is_err());
        assert!(LabeledTree::new(2, [(1, 5)]).is_err());
        assert!(LabeledTree::new(1, []).is_ok());
    }

    #[test]
    fn caterpillars() {
        assert!(path(&[1, 2, 3, 4]).is_caterpillar());
        let star = LabeledTree::new(4, [(1, 2), (1, 3), (1, 4)]).unwrap();
        assert!(star.is_caterpillar());
        let spider = LabeledTree::new(7, [(1, 2), (1, 3), (1, 4), (2, 5), (3, 6), (4, 7)]).unwrap();
        assert!(!spider.is_caterpillar());
        assert!(LabeledTree::new(2, [(1, 2)]).unwrap().is_caterpillar());
    }

    #[test]
    fn common_edge_examples() {
        let a = path(&[3, 1, 2, 4]);
        assert_eq!(
            common_edges(&a, &path(&[1, 3, 4, 2])).unwrap(),
            vec![(1, 3), (2, 4)]
        );
        assert_eq!(common_edges(&a, &a).unwrap(), a.edges().to_vec());
        assert!(common_edges(&a, &path(&[1, 4, 3, 2])).unwrap().is_empty());
        assert!(common_edges(&a, &path(&[1, 2, 3])).is_err());
    }

    #[test]
    fn stars_of_edge_sets() {
        assert!(is_star_edges(&[]));
        assert!(is_star_edges(&[(1, 2)]));
        assert!(is_star_edges(&[(1, 2), (2, 3)]));
        assert!(is_star_edges(&[(1, 2), (1, 3), (1, 4)]));
        assert!(!is_star_edges(&[(1, 2), (2, 3), (3, 4)]));
    }

    #[test]
    fn pair_indices_are_dense() {
        for n in 2..=16 {
            let mut seen = Vec::new();
            for u in 1..=n {
                for v in u + 1..=n {
                    seen.push(pair_index(n, u, v));
                }
            }
            let expected: Vec<usize> = (0..n * (n - 1) / 2).collect();
            assert_eq!(seen, expected);
        }
    }

    #[test]
    fn text_and_json_forms() {
        let t = path(&[3, 1, 2, 4]);
        let text = t.to_string();
        assert_eq!(text, "n=4\n1 2\n1 3\n2 4\n");
        assert_eq!(text.parse::<LabeledTree>().unwrap(), t);
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"{"n":4,"edges":[[1,2],[1,3],[2,4]]}"#);
        assert_eq!(serde_json::from_str::<LabeledTree>(&json).unwrap(), t);
        assert!(serde_json::from_str::<LabeledTree>(r#"{"n":3,"edges":[[1,2]]}"#).is_err());
        assert!("n=3\n1 2\n2\n".parse::<LabeledTree>().is_err());
    }
}
