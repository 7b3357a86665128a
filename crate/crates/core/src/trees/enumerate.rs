//! Counting and enumerating trees with a fixed degree sequence, plus uniform
//! sampling, all through the Prüfer bijection.

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::prufer::{decode_edges, PruferCode};
use super::{edge, LabeledTree};
use crate::degseq::DegreeSequence;
use crate::error::{domain, Result};
use crate::rational::{factorial, ratio, Rational};

/// The multiset in which vertex `i` appears `d_i - 1` times, sorted.
fn prufer_multiset(d: &DegreeSequence) -> Vec<usize> {
    d.iter()
        .flat_map(|(v, deg)| std::iter::repeat_n(v, deg - 1))
        .collect()
}

/// `(n-2)! / prod (d_k - 1)!`.
pub fn count_trees(d: &DegreeSequence) -> Result<BigUint> {
    d.require_tree("D")?;
    let denom = d
        .degrees()
        .iter()
        .fold(BigUint::from(1u32), |acc, &k| acc * factorial(k - 1));
    Ok(factorial(d.len() - 2) / denom)
}

/// Every tree realizing `d`, one per distinct permutation of the Prüfer
/// multiset, in lexicographic order of the code.
pub fn enumerate_trees(d: &DegreeSequence) -> Result<TreeEnumerator> {
    d.require_tree("D")?;
    Ok(TreeEnumerator {
        n: d.len(),
        code: Some(prufer_multiset(d)),
    })
}

#[derive(Debug, Clone)]
pub struct TreeEnumerator {
    n: usize,
    code: Option<Vec<usize>>,
}

impl TreeEnumerator {
    /// Next code without decoding it.
    pub fn next_code(&mut self) -> Option<PruferCode> {
        let current = self.code.take()?;
        let mut next = current.clone();
        if next_permutation(&mut next) {
            self.code = Some(next);
        }
        Some(PruferCode::new_unchecked(self.n, current))
    }
}

impl Iterator for TreeEnumerator {
    type Item = LabeledTree;

    fn next(&mut self) -> Option<LabeledTree> {
        self.next_code().map(|c| c.decode())
    }
}

/// Advances to the next lexicographic permutation; false after the last one.
fn next_permutation<T: Ord>(xs: &mut [T]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

/// Uniform sampler over the trees realizing one degree sequence.
///
/// Each draw is a Fisher–Yates shuffle of the Prüfer multiset followed by
/// decoding. The shuffle is uniform regardless of the buffer's previous
/// order, so the buffer is reused between draws.
#[derive(Debug, Clone)]
pub struct TreeSampler {
    n: usize,
    code: Vec<usize>,
}

impl TreeSampler {
    pub fn new(d: &DegreeSequence) -> Result<Self> {
        d.require_tree("D")?;
        Ok(TreeSampler {
            n: d.len(),
            code: prufer_multiset(d),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sample<R: Rng + ?Sized>(&mut self, rng: &mut R) -> LabeledTree {
        self.code.shuffle(rng);
        LabeledTree::from_edges_unchecked(self.n, decode_edges(self.n, &self.code))
    }
}

/// A uniformly random tree realizing `d`, reproducible from `seed`.
pub fn random_tree(d: &DegreeSequence, seed: u64) -> Result<LabeledTree> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_tree_with(d, &mut rng)
}

pub fn random_tree_with<R: Rng + ?Sized>(d: &DegreeSequence, rng: &mut R) -> Result<LabeledTree> {
    Ok(TreeSampler::new(d)?.sample(rng))
}

/// Probability that `i` and `j` are adjacent in a uniform realization of
/// `d`: `(d_i + d_j - 2) / (n - 2)`.
pub fn edge_probability(d: &DegreeSequence, i: usize, j: usize) -> Result<Rational> {
    d.require_tree("D")?;
    let n = d.len();
    if n < 3 {
        return domain("edge probability needs n >= 3");
    }
    if i == j || i == 0 || j == 0 || i > n || j > n {
        return domain(format!("bad vertex pair ({i},{j}) for n = {n}"));
    }
    Ok(ratio(d.degree(i) + d.degree(j) - 2, n - 2))
}

/// Every caterpillar realizing `d`, built spine-first: each ordering of the
/// non-leaf vertices as a path (up to reversal), then every assignment of the
/// leaves that fills the remaining degree of each spine vertex.
pub fn enumerate_caterpillars(d: &DegreeSequence) -> Result<Vec<LabeledTree>> {
    d.require_tree("D")?;
    let n = d.len();
    let mut spine = d.internal_vertices();
    let leaves = d.leaves();
    let mut out = Vec::new();
    if spine.is_empty() {
        out.push(LabeledTree::from_edges_unchecked(n, vec![(1, 2)]));
        return Ok(out);
    }
    loop {
        if spine.len() == 1 || spine[0] < spine[spine.len() - 1] {
            let k = spine.len();
            let mut edges: Vec<_> = spine.windows(2).map(|w| edge(w[0], w[1])).collect();
            let mut capacity: Vec<usize> = spine
                .iter()
                .enumerate()
                .map(|(pos, &v)| {
                    let spine_deg = usize::from(pos > 0) + usize::from(pos + 1 < k);
                    d.degree(v) - spine_deg
                })
                .collect();
            assign_leaves(n, &spine, &leaves, &mut capacity, &mut edges, &mut out);
        }
        if !next_permutation(&mut spine) {
            break;
        }
    }
    Ok(out)
}

fn assign_leaves(
    n: usize,
    spine: &[usize],
    leaves: &[usize],
    capacity: &mut [usize],
    edges: &mut Vec<(usize, usize)>,
    out: &mut Vec<LabeledTree>,
) {
    let Some((&leaf, rest)) = leaves.split_first() else {
        out.push(LabeledTree::from_edges_unchecked(n, edges.clone()));
        return;
    };
    for pos in 0..spine.len() {
        if capacity[pos] > 0 {
            capacity[pos] -= 1;
            edges.push(edge(spine[pos], leaf));
            assign_leaves(n, spine, rest, capacity, edges, out);
            edges.pop();
            capacity[pos] += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    fn seq(s: &str) -> DegreeSequence {
        s.parse().unwrap()
    }

    fn path(order: &[usize]) -> LabeledTree {
        LabeledTree::new(order.len(), order.windows(2).map(|w| (w[0], w[1]))).unwrap()
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_trees(&seq("2,2,1,1")).unwrap(), BigUint::from(2u32));
        assert_eq!(count_trees(&seq("3,1,1,1")).unwrap(), BigUint::from(1u32));
        assert_eq!(
            count_trees(&seq("5,2,2,2,2,2,1,1,1,1,1")).unwrap(),
            BigUint::from(15120u32)
        );
        assert!(count_trees(&seq("2,2,2")).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let trees: Vec<_> = enumerate_trees(&seq("2,2,1,1")).unwrap().collect();
        assert_eq!(trees, vec![path(&[3, 1, 2, 4]), path(&[4, 1, 2, 3])]);
        let star: Vec<_> = enumerate_trees(&seq("3,1,1,1")).unwrap().collect();
        assert_eq!(
            star,
            vec![LabeledTree::new(4, [(1, 2), (1, 3), (1, 4)]).unwrap()]
        );
        assert_eq!(enumerate_trees(&seq("2,2,2,1,1")).unwrap().count(), 6);
        assert_eq!(enumerate_trees(&seq("1,1")).unwrap().count(), 1);
        assert_eq!(
            enumerate_trees(&seq("5,2,2,2,2,2,1,1,1,1,1"))
                .unwrap()
                .collect::<BTreeSet<_>>()
                .len(),
            15120
        );
    }

    #[test]
    fn random_trees_realize_and_repeat() {
        let d = seq("2,2,1,1");
        for seed in 0..50 {
            let t = random_tree(&d, seed).unwrap();
            assert!(t.realizes(&d));
            assert_eq!(t, random_tree(&d, seed).unwrap());
        }
        let star = LabeledTree::new(4, [(1, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(random_tree(&seq("3,1,1,1"), 9).unwrap(), star);
        assert_eq!(
            random_tree(&seq("1,1"), 3).unwrap(),
            LabeledTree::new(2, [(1, 2)]).unwrap()
        );
        assert!(random_tree(&seq("2,2,2"), 0).is_err());
    }

    #[test]
    fn random_tree_is_balanced_on_a_four_path() {
        let d = seq("2,2,1,1");
        let first = path(&[3, 1, 2, 4]);
        let mut sampler = TreeSampler::new(&d).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let draws = 100_000;
        let hits = (0..draws)
            .filter(|_| sampler.sample(&mut rng) == first)
            .count();
        let freq = hits as f64 / draws as f64;
        assert!((freq - 0.5).abs() <= 0.02, "frequency {freq}");
    }

    #[test]
    fn edge_probability_examples() {
        assert_eq!(
            edge_probability(&seq("2,2,1,1"), 1, 2).unwrap(),
            ratio(1, 1)
        );
        assert_eq!(
            edge_probability(&seq("2,2,2,1,1"), 4, 5).unwrap(),
            ratio(0, 1)
        );
        assert_eq!(
            edge_probability(&seq("2,2,2,1,1"), 1, 2).unwrap(),
            ratio(2, 3)
        );
        assert!(edge_probability(&seq("2,2,1,1"), 2, 2).is_err());
        assert!(edge_probability(&seq("2,2,1,1"), 1, 5).is_err());
        assert!(edge_probability(&seq("1,1"), 1, 2).is_err());
    }

    #[test]
    fn spine_enumeration_matches_filtered_enumeration() {
        for s in [
            "2,2,1,1",
            "3,1,1,1",
            "1,1",
            "2,1,1",
            "3,2,2,1,1,1",
            "2,3,1,2,1,1",
            "4,2,1,1,2,1,1",
            "3,3,2,1,1,1,1",
            "3,3,3,1,1,1,1,1",
        ] {
            let d = seq(s);
            let spine: BTreeSet<_> = enumerate_caterpillars(&d).unwrap().into_iter().collect();
            let filtered: BTreeSet<_> = enumerate_trees(&d)
                .unwrap()
                .filter(LabeledTree::is_caterpillar)
                .collect();
            assert_eq!(spine, filtered, "{s}");
            assert_eq!(enumerate_caterpillars(&d).unwrap().len(), spine.len());
        }
    }

    #[test]
    fn lexicographic_permutations() {
        let mut xs = vec![1, 1, 2];
        let mut seen = vec![xs.clone()];
        while next_permutation(&mut xs) {
            seen.push(xs.clone());
        }
        assert_eq!(seen, vec![vec![1, 1, 2], vec![1, 2, 1], vec![2, 1, 1]]);
    }
}
