//! Edge-disjoint caterpillar realizations of two tree sequences without a
//! common leaf.
//!
//! Induction on `n`, run iteratively. While the pair is not two path
//! sequences, pick `i` with `d_i >= 3` and `j` with `d_j = 1, f_j = 2` (or the
//! same with the roles of `D` and `F` exchanged), delete `j` and lower `d_i`.
//! The base pair of path sequences is realized by two relabeled disjoint
//! Hamiltonian paths. Unwinding, `j` is hung on `i` in the first tree and
//! subdivides a spine edge avoiding `i` in the second.

use std::collections::BTreeSet;

use super::{hamiltonian_path_orders, require_pair, PackingResult};
use crate::degseq::DegreeSequence;
use crate::error::{domain, Error, Result};
use crate::trees::{edge, Edge, LabeledTree};

#[derive(Debug, Clone, Copy)]
struct Step {
    hub: usize,
    removed: usize,
    /// The hub's degree was lowered in `F` rather than `D`.
    swapped: bool,
}

pub fn pack_caterpillars(d: &DegreeSequence, f: &DegreeSequence) -> Result<PackingResult> {
    require_pair(d, f)?;
    if let Some((v, _)) = d.iter().find(|&(v, dv)| dv + f.degree(v) < 3) {
        return domain(format!("vertex {v} is a leaf in both sequences"));
    }
    let n = d.len();
    // Indexed by vertex label; slot 0 unused.
    let mut dd: Vec<usize> = std::iter::once(0)
        .chain(d.degrees().iter().copied())
        .collect();
    let mut ff: Vec<usize> = std::iter::once(0)
        .chain(f.degrees().iter().copied())
        .collect();
    let mut active: Vec<usize> = (1..=n).collect();
    let mut steps = Vec::new();

    while !(is_path(&active, &dd) && is_path(&active, &ff)) {
        let step = select(&active, &dd, &ff, false)
            .or_else(|| select(&active, &ff, &dd, true))
            .ok_or_else(|| {
                Error::Internal(format!(
                    "no reducible index pair on {} vertices",
                    active.len()
                ))
            })?;
        if step.swapped {
            ff[step.hub] -= 1;
        } else {
            dd[step.hub] -= 1;
        }
        active.retain(|&v| v != step.removed);
        steps.push(step);
    }

    let (mut first, mut second) = path_pair(&active, &dd, &ff)?;
    for step in steps.iter().rev() {
        let (hang, subdivide) = if step.swapped {
            (&mut second, &mut first)
        } else {
            (&mut first, &mut second)
        };
        hang.insert(edge(step.hub, step.removed));
        let (k, l) = spine_edge_avoiding(subdivide, step.hub)?;
        subdivide.remove(&edge(k, l));
        subdivide.insert(edge(k, step.removed));
        subdivide.insert(edge(step.removed, l));
    }

    let trees = vec![
        LabeledTree::from_edges_unchecked(n, first.into_iter().collect()),
        LabeledTree::from_edges_unchecked(n, second.into_iter().collect()),
    ];
    if let Some(k) = trees.iter().position(|t| !t.is_caterpillar()) {
        return Err(Error::Internal(format!("tree {k} is not a caterpillar")));
    }
    PackingResult::verified(trees, &[d, f])
}

fn is_path(active: &[usize], deg: &[usize]) -> bool {
    active.iter().filter(|&&v| deg[v] == 1).count() == 2
        && active.iter().all(|&v| deg[v] == 1 || deg[v] == 2)
}

/// Smallest `i` with `a_i >= 3` and smallest `j` with `a_j = 1`, `b_j = 2`.
fn select(active: &[usize], a: &[usize], b: &[usize], swapped: bool) -> Option<Step> {
    let hub = active.iter().copied().find(|&v| a[v] >= 3)?;
    let removed = active.iter().copied().find(|&v| a[v] == 1 && b[v] == 2)?;
    Some(Step {
        hub,
        removed,
        swapped,
    })
}

/// Both sequences are paths on `active`: map `D`'s ends to `{1, k}` and `F`'s
/// ends to `{2, 3}` of the canonical Hamiltonian pair.
fn path_pair(
    active: &[usize],
    dd: &[usize],
    ff: &[usize],
) -> Result<(BTreeSet<Edge>, BTreeSet<Edge>)> {
    let k = active.len();
    let d_ends: Vec<usize> = active.iter().copied().filter(|&v| dd[v] == 1).collect();
    let f_ends: Vec<usize> = active.iter().copied().filter(|&v| ff[v] == 1).collect();
    let rest = active
        .iter()
        .copied()
        .filter(|v| !d_ends.contains(v) && !f_ends.contains(v));
    // label[c] is the vertex carrying canonical label c.
    let mut label = vec![0; k + 1];
    label[1] = d_ends[0];
    label[k] = d_ends[1];
    label[2] = f_ends[0];
    label[3] = f_ends[1];
    for (c, v) in (4..k).zip(rest) {
        label[c] = v;
    }
    let (p1, p2) = hamiltonian_path_orders(k)?;
    let relabel = |order: Vec<usize>| -> BTreeSet<Edge> {
        order
            .windows(2)
            .map(|w| edge(label[w[0]], label[w[1]]))
            .collect()
    };
    Ok((relabel(p1), relabel(p2)))
}

/// First edge, walking the spine path extended by one leaf at each end, with
/// neither endpoint equal to `avoid`. The walk starts at the spine end with
/// the smaller label and uses the smallest leaf at each end.
fn spine_edge_avoiding(edges: &BTreeSet<Edge>, avoid: usize) -> Result<(usize, usize)> {
    let size = edges.iter().map(|&(_, v)| v).max().unwrap_or(0);
    let mut adj = vec![Vec::new(); size + 1];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    for list in adj.iter_mut() {
        list.sort_unstable();
    }
    let internal = |v: usize| adj[v].len() >= 2;
    let spine_neighbors =
        |v: usize| -> Vec<usize> { adj[v].iter().copied().filter(|&u| internal(u)).collect() };
    let start = (1..=size)
        .find(|&v| internal(v) && spine_neighbors(v).len() <= 1)
        .ok_or_else(|| Error::Internal("tree without a spine end".into()))?;

    let mut walk = vec![start];
    let mut prev = 0;
    let mut cur = start;
    while let Some(next) = spine_neighbors(cur).into_iter().find(|&u| u != prev) {
        prev = cur;
        cur = next;
        walk.push(next);
    }
    let first_leaf = adj[start].iter().copied().find(|&u| !internal(u));
    let last_leaf = adj[cur]
        .iter()
        .copied()
        .find(|&u| !internal(u) && Some(u) != first_leaf);
    let mut path = Vec::with_capacity(walk.len() + 2);
    path.extend(first_leaf);
    path.extend(walk);
    path.extend(last_leaf);

    path.windows(2)
        .find(|w| w[0] != avoid && w[1] != avoid)
        .map(|w| (w[0], w[1]))
        .ok_or_else(|| Error::Internal(format!("every spine edge touches vertex {avoid}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::common_edges;

    fn seq(s: &str) -> DegreeSequence {
        s.parse().unwrap()
    }

    fn path(order: &[usize]) -> LabeledTree {
        LabeledTree::new(order.len(), order.windows(2).map(|w| (w[0], w[1]))).unwrap()
    }

    fn check(d: &str, f: &str) -> PackingResult {
        let (d, f) = (seq(d), seq(f));
        let packed = pack_caterpillars(&d, &f).unwrap();
        let [a, b] = packed.trees() else {
            panic!("two trees expected")
        };
        assert!(a.realizes(&d) && b.realizes(&f));
        assert!(a.is_caterpillar() && b.is_caterpillar());
        assert!(common_edges(a, b).unwrap().is_empty());
        packed
    }

    #[test]
    fn base_case() {
        let packed = check("2,2,1,1", "1,1,2,2");
        assert_eq!(packed.trees(), &[path(&[3, 1, 2, 4]), path(&[1, 4, 3, 2])]);
    }

    #[test]
    fn path_path_branch() {
        check("2,2,2,2,1,1", "1,1,2,2,2,2");
        check("1,2,2,1,2,2", "2,1,2,2,1,2");
    }

    #[test]
    fn inductive_steps() {
        check("3,2,1,1,2,1", "1,1,2,2,1,3");
        check("1,1,2,2,1,3", "3,2,1,1,2,1");
        check("4,1,1,1,1,2,2", "1,2,2,2,2,1,2");
        check("3,3,3,1,1,1,1,1", "1,1,1,2,2,2,2,3");
    }

    #[test]
    fn rejects_common_leaves() {
        assert!(matches!(
            pack_caterpillars(&seq("2,1,1"), &seq("2,1,1")),
            Err(Error::Domain(_))
        ));
        assert!(pack_caterpillars(&seq("2,2,1,1"), &seq("2,1,2,1")).is_err());
        assert!(pack_caterpillars(&seq("2,2,2"), &seq("1,1,2")).is_err());
    }

    #[test]
    fn spine_walk_prefers_small_labels() {
        let edges: BTreeSet<Edge> = path(&[5, 3, 1, 2, 4]).edges().iter().copied().collect();
        assert_eq!(spine_edge_avoiding(&edges, 9).unwrap(), (4, 2));
        assert_eq!(spine_edge_avoiding(&edges, 2).unwrap(), (1, 3));
    }
}
