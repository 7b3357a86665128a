use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use super::{Edge, LabeledTree};
use crate::error::{domain, Error, Result};

/// Prüfer code of a labeled tree on `n >= 2` vertices: `n - 2` symbols from
/// `1..=n`, where vertex `i` appears `deg(i) - 1` times.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CodeJson")]
pub struct PruferCode {
    n: usize,
    code: Vec<usize>,
}

#[derive(Deserialize)]
struct CodeJson {
    n: usize,
    code: Vec<usize>,
}

impl TryFrom<CodeJson> for PruferCode {
    type Error = Error;

    fn try_from(raw: CodeJson) -> Result<Self> {
        PruferCode::new(raw.n, raw.code)
    }
}

impl PruferCode {
    pub fn new(n: usize, code: Vec<usize>) -> Result<Self> {
        if n < 2 {
            return domain(format!("Prüfer codes need n >= 2, got {n}"));
        }
        if code.len() != n - 2 {
            return domain(format!(
                "code of length {} does not encode a tree on {n} vertices",
                code.len()
            ));
        }
        if let Some(&bad) = code.iter().find(|&&s| s == 0 || s > n) {
            return domain(format!("symbol {bad} outside 1..={n}"));
        }
        Ok(PruferCode { n, code })
    }

    pub(crate) fn new_unchecked(n: usize, code: Vec<usize>) -> Self {
        PruferCode { n, code }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn symbols(&self) -> &[usize] {
        &self.code
    }

    pub fn decode(&self) -> LabeledTree {
        LabeledTree::from_edges_unchecked(self.n, decode_edges(self.n, &self.code))
    }
}

/// Repeatedly joins the smallest current leaf to the next code symbol.
pub(crate) fn decode_edges(n: usize, code: &[usize]) -> Vec<Edge> {
    let mut remaining = vec![1usize; n + 1];
    for &s in code {
        remaining[s] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> = (1..=n)
        .filter(|&v| remaining[v] == 1)
        .map(Reverse)
        .collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &s in code {
        let Reverse(leaf) = leaves.pop().expect("a leaf always exists");
        edges.push((leaf, s));
        remaining[s] -= 1;
        if remaining[s] == 1 {
            leaves.push(Reverse(s));
        }
    }
    let Reverse(a) = leaves.pop().expect("two vertices remain");
    let Reverse(b) = leaves.pop().expect("two vertices remain");
    edges.push((a, b));
    edges
}

pub fn prufer_decode(code: &PruferCode) -> LabeledTree {
    code.decode()
}

/// Inverse of [`prufer_decode`]; fails for single-vertex trees.
pub fn prufer_encode(tree: &LabeledTree) -> Result<PruferCode> {
    let n = tree.n();
    if n < 2 {
        return Err(Error::Structure(
            "a single vertex has no Prüfer code".into(),
        ));
    }
    let adj = tree.adjacency();
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut removed = vec![false; n + 1];
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (1..=n).filter(|&v| deg[v] == 1).map(Reverse).collect();
    let mut code = Vec::with_capacity(n - 2);
    while code.len() < n - 2 {
        let Reverse(leaf) = leaves.pop().expect("trees always have a leaf");
        removed[leaf] = true;
        let parent = adj[leaf]
            .iter()
            .copied()
            .find(|&u| !removed[u])
            .expect("a leaf keeps one live neighbor");
        code.push(parent);
        deg[parent] -= 1;
        if deg[parent] == 1 {
            leaves.push(Reverse(parent));
        }
    }
    Ok(PruferCode::new_unchecked(n, code))
}
