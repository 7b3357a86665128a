#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use treepack::packing::MultiInstance;
use treepack::trees::{enumerate_trees, Edge};
use treepack::{DegreeMatrix, DegreeSequence, LabeledTree};

pub fn seq(s: &str) -> DegreeSequence {
    s.parse().unwrap()
}

/// Every tree degree sequence on `n` vertices (compositions of `2n - 2`).
pub fn tree_sequences(n: usize) -> Vec<DegreeSequence> {
    fn go(left: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for d in 1..=left.saturating_sub(slots - 1) {
            cur.push(d);
            go(left - d, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(2 * n - 2, n, &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|v| DegreeSequence::new(v).unwrap())
        .collect()
}

/// Every degree sequence on `n` vertices with entries in `0..n`.
pub fn all_sequences(n: usize) -> Vec<DegreeSequence> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<usize>| {
                (0..n).map(move |d| {
                    let mut w = v.clone();
                    w.push(d);
                    w
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|v| DegreeSequence::new(v).unwrap())
        .collect()
}

pub fn complementary(d: &DegreeSequence, f: &DegreeSequence) -> bool {
    d.degrees()
        .iter()
        .zip(f.degrees())
        .all(|(a, b)| a.min(b) == &1)
}

pub fn no_common_leaf(d: &DegreeSequence, f: &DegreeSequence) -> bool {
    d.degrees().iter().zip(f.degrees()).all(|(a, b)| a + b >= 3)
}

/// Bit for the unordered pair `{u, v}`, written out independently of the
/// library's own indexing.
pub fn edge_bit(n: usize, (u, v): Edge) -> u128 {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    1u128 << ((a - 1) * n + (b - 1))
}

pub fn mask(tree: &LabeledTree) -> u128 {
    assert!(tree.n() <= 11);
    tree.edges()
        .iter()
        .fold(0, |m, &e| m | edge_bit(tree.n(), e))
}

pub fn tree_masks(d: &DegreeSequence) -> Vec<u128> {
    enumerate_trees(d).unwrap().map(|t| mask(&t)).collect()
}

/// Caches the realization masks of every tree sequence seen.
#[derive(Default)]
pub struct MaskCache {
    cache: BTreeMap<DegreeSequence, Vec<u128>>,
}

impl MaskCache {
    pub fn get(&mut self, d: &DegreeSequence) -> &[u128] {
        self.cache.entry(d.clone()).or_insert_with(|| tree_masks(d))
    }

    /// Whether some realization pair is edge-disjoint.
    pub fn disjoint_exists(&mut self, d: &DegreeSequence, f: &DegreeSequence) -> bool {
        let a = self.get(d).to_vec();
        let b = self.get(f);
        a.iter().any(|x| b.iter().any(|y| x & y == 0))
    }
}

pub fn is_hamiltonian_path(order: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n + 1];
    order.len() == n
        && order
            .iter()
            .all(|&v| (1..=n).contains(&v) && !std::mem::replace(&mut seen[v], true))
}

/// Empirical distribution of `draws` over `support`, in support order.
pub fn empirical<T: Ord>(support: &[T], draws: impl IntoIterator<Item = T>) -> Vec<f64> {
    let index: BTreeMap<&T, usize> = support.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut counts = vec![0u64; support.len()];
    let mut total = 0u64;
    for x in draws {
        counts[*index.get(&x).expect("draw outside the support")] += 1;
        total += 1;
    }
    counts.iter().map(|&c| c as f64 / total as f64).collect()
}

pub fn row(n: usize, hubs: &[(usize, usize)]) -> DegreeSequence {
    let mut v = vec![1; n];
    for &(vertex, deg) in hubs {
        v[vertex - 1] = deg;
    }
    DegreeSequence::new(v).unwrap()
}

/// Random instance with `m <= 4`, `n <= 14`. Parts have at least two
/// vertices except with small probability, and degrees respect the bound
/// `n - m` except with small probability, so most instances are packable.
pub fn random_multi(rng: &mut ChaCha8Rng) -> Option<MultiInstance> {
    let m = rng.gen_range(1..=4);
    let n = rng.gen_range((2 * m).max(4)..=14);
    let mut vertices: Vec<usize> = (1..=n).collect();
    for i in (1..n).rev() {
        vertices.swap(i, rng.gen_range(0..=i));
    }
    let cap = n - m - 1;
    let mut rows = Vec::new();
    let mut pool = vertices.into_iter();
    for i in 0..m {
        let reserve = 2 * (m - i - 1);
        let max_s = (n - 2).min(pool.len().checked_sub(reserve)?);
        let min_s = if rng.gen_bool(0.05) { 1 } else { 2 };
        if max_s < min_s {
            return None;
        }
        let s = rng.gen_range(min_s..=max_s.min(min_s + 3));
        let part: Vec<usize> = pool.by_ref().take(s).collect();
        let capped = !rng.gen_bool(0.05) && s * cap >= n - 2;
        let mut extra = vec![1usize; s];
        for _ in 0..(n - 2 - s) {
            let open: Vec<usize> = (0..s).filter(|&k| !capped || extra[k] < cap).collect();
            extra[open[rng.gen_range(0..open.len())]] += 1;
        }
        let hubs: Vec<_> = part.iter().zip(&extra).map(|(&v, &x)| (v, x + 1)).collect();
        rows.push(row(n, &hubs));
    }
    MultiInstance::new(DegreeMatrix::new(rows).ok()?).ok()
}
