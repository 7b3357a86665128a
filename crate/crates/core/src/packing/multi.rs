//! Packing `m` tree sequences where every vertex is a non-leaf in at most one
//! of them. They pack iff every degree is at most `n - m`.
//!
//! For `m >= 3` each row first gets a trial tree whose restriction to
//! `V_i ∪ V_k` is not a star for every other row `k` (`V_i` being the
//! non-leaves of row `i`). Trial trees can only collide on edges between
//! some `V_i` and `V_k`; each colliding pair is repaired once, in
//! lexicographic order, by re-packing the two restricted subtrees as a
//! complementary-leaf pair.
//!
//! A repair of `(i, k)` rewires the edges inside `V_i` and so can turn the
//! restriction of row `i` to `V_i ∪ V_l` into a star, which would leave the
//! later pair `(i, l)` unrepairable. Trial trees therefore hang the vertices
//! of each `V_l` on at least two hubs. Those edges leave the window of every
//! other pair, so the restrictions stay non-star through all repairs.

use std::cmp::Reverse;
use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{pack_complementary_leaves, pack_complementary_with, PackingResult};
use crate::degseq::{DegreeMatrix, DegreeSequence};
use crate::error::{domain, Error, Result};
use crate::trees::{count_common, edge, is_star_edges, random_tree, Edge, LabeledTree, PruferCode};

/// A degree matrix of tree sequences with pairwise disjoint non-leaf sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiInstance {
    matrix: DegreeMatrix,
    parts: Vec<Vec<usize>>,
    free_leaves: Vec<usize>,
}

impl MultiInstance {
    pub fn new(matrix: DegreeMatrix) -> Result<Self> {
        for (k, row) in matrix.rows().iter().enumerate() {
            row.require_tree(&format!("row {}", k + 1))?;
        }
        let parts: Vec<Vec<usize>> = matrix
            .rows()
            .iter()
            .map(DegreeSequence::internal_vertices)
            .collect();
        let mut owner = vec![None; matrix.n() + 1];
        for (k, part) in parts.iter().enumerate() {
            for &v in part {
                if let Some(prev) = owner[v].replace(k) {
                    return domain(format!(
                        "vertex {v} is a non-leaf in rows {} and {}",
                        prev + 1,
                        k + 1
                    ));
                }
            }
        }
        let free_leaves = (1..=matrix.n()).filter(|&v| owner[v].is_none()).collect();
        Ok(MultiInstance {
            matrix,
            parts,
            free_leaves,
        })
    }

    pub fn from_rows(rows: Vec<DegreeSequence>) -> Result<Self> {
        Self::new(DegreeMatrix::new(rows)?)
    }

    pub fn matrix(&self) -> &DegreeMatrix {
        &self.matrix
    }

    pub fn rows(&self) -> &[DegreeSequence] {
        self.matrix.rows()
    }

    /// Non-leaf vertices of each row.
    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    /// Vertices that are leaves in every row.
    pub fn free_leaves(&self) -> &[usize] {
        &self.free_leaves
    }

    pub fn m(&self) -> usize {
        self.matrix.row_count()
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    /// The packing criterion: every degree is at most `n - m`.
    pub fn is_packable(&self) -> bool {
        self.m() <= self.n() && self.matrix.max_entry() <= self.n() - self.m()
    }
}

/// Realizes `d` so that its restriction to `U ∪ V_j` is not a star for every
/// given part `V_j`, where `U` is the set of non-leaves of `d`.
///
/// `parts` are `m - 1` pairwise disjoint sets of leaves of `d`, each with at
/// least two vertices, and `n > m > 2`, `max d <= n - m`.
pub fn nonstar_restricted_tree(d: &DegreeSequence, parts: &[Vec<usize>]) -> Result<LabeledTree> {
    d.require_tree("D")?;
    let n = d.len();
    let m = parts.len() + 1;
    let internal = d.internal_vertices();
    if internal.len() < 2 {
        return domain("D needs at least two non-leaf vertices");
    }
    if m <= 2 || n <= m {
        return domain(format!("need n > m > 2, got n = {n}, m = {m}"));
    }
    if d.max() > n - m {
        return domain(format!("max degree {} exceeds n - m = {}", d.max(), n - m));
    }
    let mut used = vec![false; n + 1];
    for part in parts {
        if part.len() < 2 {
            return domain("every part needs at least two vertices");
        }
        for &v in part {
            if v == 0 || v > n || d.degree(v) != 1 {
                return domain(format!("part vertex {v} is not a leaf of D"));
            }
            if std::mem::replace(&mut used[v], true) {
                return domain(format!("vertex {v} appears in two parts"));
            }
        }
    }

    let edges = match internal.len() {
        2 => two_hubs(d, &internal, parts),
        _ => spread_hubs(d, &internal, parts)?,
    };
    let tree = LabeledTree::from_edges_unchecked(n, edges);
    if !tree.realizes(d) {
        return Err(Error::Internal("restricted tree has wrong degrees".into()));
    }
    let hubs: BTreeSet<usize> = internal.iter().copied().collect();
    for part in parts {
        if restriction_is_star(tree.edges(), &hubs, part) {
            return Err(Error::Internal(format!(
                "restriction to the part {part:?} is a star"
            )));
        }
    }
    Ok(tree)
}

fn restriction_is_star(edges: &[Edge], hubs: &BTreeSet<usize>, part: &[usize]) -> bool {
    let keep = |v: &usize| hubs.contains(v) || part.contains(v);
    let induced: Vec<Edge> = edges
        .iter()
        .copied()
        .filter(|(u, v)| keep(u) && keep(v))
        .collect();
    is_star_edges(&induced)
}

/// `U = {a, b}`: join them, send one vertex of each part to either side, and
/// split the other leaves `d_a - m` to `a`, the rest to `b`.
fn two_hubs(d: &DegreeSequence, hubs: &[usize], parts: &[Vec<usize>]) -> Vec<Edge> {
    let (a, b) = (hubs[0], hubs[1]);
    let m = parts.len() + 1;
    let mut edges = vec![edge(a, b)];
    let mut placed = BTreeSet::new();
    for part in parts {
        edges.push(edge(a, part[0]));
        edges.push(edge(b, part[1]));
        placed.extend([part[0], part[1]]);
    }
    let rest: Vec<usize> = d
        .leaves()
        .into_iter()
        .filter(|v| !placed.contains(v))
        .collect();
    let (to_a, to_b) = rest.split_at(d.degree(a) - m);
    edges.extend(to_a.iter().map(|&v| edge(a, v)));
    edges.extend(to_b.iter().map(|&v| edge(b, v)));
    edges
}

/// `|U| >= 3`: every hub starts with one skeleton edge end, and the `|U| - 2`
/// remaining skeleton degrees go one at a time to the hub with the most spare
/// slots. Two vertices of every part then land on the two hubs with the most
/// slots left, so no hub sees a whole part. The degree bound leaves enough
/// slots for this.
fn spread_hubs(d: &DegreeSequence, hubs: &[usize], parts: &[Vec<usize>]) -> Result<Vec<Edge>> {
    let s = hubs.len();
    let mut spare: Vec<usize> = hubs.iter().map(|&h| d.degree(h) - 1).collect();
    let mut skeleton = vec![1; s];
    let roomiest = |spare: &[usize], skip: Option<usize>| {
        (0..s)
            .filter(|&j| Some(j) != skip)
            .max_by_key(|&j| (spare[j], Reverse(j)))
            .filter(|&j| spare[j] > 0)
    };
    for _ in 2..s {
        let j =
            roomiest(&spare, None).ok_or_else(|| Error::Internal("hubs out of slots".into()))?;
        spare[j] -= 1;
        skeleton[j] += 1;
    }
    let code = (0..s)
        .flat_map(|j| std::iter::repeat_n(j + 1, skeleton[j] - 1))
        .collect();
    let mut edges: Vec<Edge> = PruferCode::new(s, code)?
        .decode()
        .edges()
        .iter()
        .map(|&(a, b)| edge(hubs[a - 1], hubs[b - 1]))
        .collect();

    let mut placed = BTreeSet::new();
    for part in parts {
        let mut first = None;
        for &v in &part[..2] {
            let j = roomiest(&spare, first)
                .ok_or_else(|| Error::Internal(format!("cannot split part {part:?}")))?;
            spare[j] -= 1;
            first = Some(j);
            edges.push(edge(hubs[j], v));
            placed.insert(v);
        }
    }
    let mut rest = d.leaves().into_iter().filter(|v| !placed.contains(v));
    for (j, &hub) in hubs.iter().enumerate() {
        edges.extend(rest.by_ref().take(spare[j]).map(|v| edge(hub, v)));
    }
    Ok(edges)
}

/// Edge-disjoint realizations of all rows, or [`Error::Infeasible`] when some
/// degree exceeds `n - m`.
pub fn pack_multi(inst: &MultiInstance, seed: u64) -> Result<PackingResult> {
    pack_multi_logged(inst, seed).map(|(packing, _)| packing)
}

/// As [`pack_multi`], also returning the row pairs (0-based) that needed a
/// repair, in the order they were repaired.
pub fn pack_multi_logged(
    inst: &MultiInstance,
    seed: u64,
) -> Result<(PackingResult, Vec<(usize, usize)>)> {
    let (n, m) = (inst.n(), inst.m());
    let rows: Vec<&DegreeSequence> = inst.rows().iter().collect();
    if !inst.is_packable() {
        return Err(Error::Infeasible(format!(
            "max degree {} exceeds n - m = {}",
            inst.matrix.max_entry(),
            n.saturating_sub(m)
        )));
    }
    match m {
        1 => {
            let tree = random_tree(rows[0], seed)?;
            return Ok((PackingResult::verified(vec![tree], &rows)?, Vec::new()));
        }
        2 => {
            let packed = pack_complementary_leaves(rows[0], rows[1], seed)?;
            return Ok((packed, Vec::new()));
        }
        _ => {}
    }

    let parts = &inst.parts;
    let mut trees = Vec::with_capacity(m);
    for (i, row) in rows.iter().enumerate() {
        let others: Vec<Vec<usize>> = (0..m)
            .filter(|&k| k != i)
            .map(|k| parts[k].clone())
            .collect();
        trees.push(nonstar_restricted_tree(row, &others)?);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut repaired = Vec::new();
    for i in 0..m {
        for k in i + 1..m {
            if count_common(trees[i].edges(), trees[k].edges()) > 0 {
                repair(&mut trees, parts, i, k, &mut rng)?;
                repaired.push((i, k));
            }
        }
    }
    Ok((PackingResult::verified(trees, &rows)?, repaired))
}

fn repair<R: Rng + ?Sized>(
    trees: &mut [LabeledTree],
    parts: &[Vec<usize>],
    i: usize,
    k: usize,
    rng: &mut R,
) -> Result<()> {
    let n = trees[i].n();
    let window: Vec<usize> = {
        let mut w: Vec<usize> = parts[i].iter().chain(&parts[k]).copied().collect();
        w.sort_unstable();
        w
    };
    let window_set: BTreeSet<usize> = window.iter().copied().collect();
    let mut local = vec![0; n + 1];
    for (idx, &v) in window.iter().enumerate() {
        local[v] = idx + 1;
    }
    let size = window.len();

    let restrict = |tree: &LabeledTree| -> Result<(LabeledTree, Vec<Edge>)> {
        let (inside, outside): (Vec<Edge>, Vec<Edge>) = tree
            .edges()
            .iter()
            .partition(|(u, v)| window_set.contains(u) && window_set.contains(v));
        let sub = LabeledTree::new(size, inside.iter().map(|&(u, v)| (local[u], local[v])))
            .map_err(|e| Error::Internal(format!("restricted subtree: {e}")))?;
        Ok((sub, outside))
    };
    let (sub_i, keep_i) = restrict(&trees[i])?;
    let (sub_k, keep_k) = restrict(&trees[k])?;

    let lift = |sub: &LabeledTree, keep: &[Edge]| -> Vec<Edge> {
        sub.edges()
            .iter()
            .map(|&(a, b)| edge(window[a - 1], window[b - 1]))
            .chain(keep.iter().copied())
            .collect()
    };
    let packed = pack_complementary_with(&sub_i.degree_sequence(), &sub_k.degree_sequence(), rng)
        .map_err(|e| match e {
        Error::Infeasible(msg) => Error::Internal(format!("repair of rows {i},{k}: {msg}")),
        other => other,
    })?;
    let [new_i, new_k] = packed.trees() else {
        unreachable!("a pair packing has two trees")
    };
    trees[i] = LabeledTree::from_edges_unchecked(n, lift(new_i, &keep_i));
    trees[k] = LabeledTree::from_edges_unchecked(n, lift(new_k, &keep_k));
    Ok(())
}
