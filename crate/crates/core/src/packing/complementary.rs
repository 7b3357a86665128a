//! Packing two tree sequences in which every vertex is a leaf of at least one.
//!
//! Such a pair packs iff neither sequence is a star. Two independent uniform
//! realizations share one edge on average and are disjoint with probability
//! at least `p_lower` (see [`crate::sampling::analyze_pair`]), so drawing
//! pairs until one is disjoint terminates quickly. After `50 / p_lower`
//! failed draws the packer falls back to an exhaustive scan.

use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{require_pair, PackingResult};
use crate::degseq::DegreeSequence;
use crate::error::{domain, Error, Result};
use crate::sampling::analyze_pair;
use crate::trees::{count_common, count_trees, enumerate_trees, LabeledTree, TreeSampler};

/// Upper limit on `N_D * N_F` for the exhaustive fallback.
const EXHAUSTIVE_PAIR_LIMIT: u64 = 50_000_000;

const BUDGET_FACTOR: u64 = 50;

/// Checks the leaf-overlap shape and returns whether the pair packs.
pub fn complementary_leaf_packable(d: &DegreeSequence, f: &DegreeSequence) -> Result<bool> {
    require_complementary(d, f)?;
    let n = d.len();
    Ok(d.max() < n - 1 && f.max() < n - 1)
}

fn require_complementary(d: &DegreeSequence, f: &DegreeSequence) -> Result<()> {
    require_pair(d, f)?;
    match d.iter().find(|&(v, dv)| dv.min(f.degree(v)) != 1) {
        Some((v, _)) => domain(format!("vertex {v} is a non-leaf in both sequences")),
        None => Ok(()),
    }
}

pub fn pack_complementary_leaves(
    d: &DegreeSequence,
    f: &DegreeSequence,
    seed: u64,
) -> Result<PackingResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    pack_complementary_with(d, f, &mut rng)
}

/// As [`pack_complementary_leaves`], drawing from a caller-owned generator.
pub(crate) fn pack_complementary_with<R: Rng + ?Sized>(
    d: &DegreeSequence,
    f: &DegreeSequence,
    rng: &mut R,
) -> Result<PackingResult> {
    if !complementary_leaf_packable(d, f)? {
        return Err(Error::Infeasible(format!(
            "a star cannot be packed: max degrees {} and {} on {} vertices",
            d.max(),
            f.max(),
            d.len()
        )));
    }
    let p_lower = analyze_pair(d, f)?.p_lower;
    debug_assert!(!p_lower.is_zero());
    let budget = (p_lower.recip() * num_bigint::BigInt::from(BUDGET_FACTOR))
        .ceil()
        .to_integer()
        .to_u64()
        .unwrap_or(u64::MAX);

    let mut sample_d = TreeSampler::new(d)?;
    let mut sample_f = TreeSampler::new(f)?;
    for _ in 0..budget {
        let a = sample_d.sample(rng);
        let b = sample_f.sample(rng);
        if count_common(a.edges(), b.edges()) == 0 {
            return PackingResult::verified(vec![a, b], &[d, f]);
        }
    }
    exhaustive(d, f)
}

fn exhaustive(d: &DegreeSequence, f: &DegreeSequence) -> Result<PackingResult> {
    let pairs = count_trees(d)? * count_trees(f)?;
    if pairs > EXHAUSTIVE_PAIR_LIMIT.into() {
        return Err(Error::Resource(format!(
            "rejection budget exhausted and {pairs} pairs are too many to scan"
        )));
    }
    let second: Vec<LabeledTree> = enumerate_trees(f)?.collect();
    for a in enumerate_trees(d)? {
        if let Some(b) = second
            .iter()
            .find(|b| count_common(a.edges(), b.edges()) == 0)
        {
            return PackingResult::verified(vec![a, b.clone()], &[d, f]);
        }
    }
    Err(Error::Internal("no disjoint pair exists".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::common_edges;

    fn seq(s: &str) -> DegreeSequence {
        s.parse().unwrap()
    }

    #[test]
    fn four_vertices() {
        let (d, f) = (seq("2,2,1,1"), seq("1,1,2,2"));
        for seed in 0..20 {
            let packed = pack_complementary_leaves(&d, &f, seed).unwrap();
            let [a, b] = packed.trees() else { panic!() };
            assert!(a.realizes(&d) && b.realizes(&f));
            assert!(common_edges(a, b).unwrap().is_empty());
        }
    }

    #[test]
    fn stars_are_infeasible() {
        assert!(matches!(
            pack_complementary_leaves(&seq("4,1,1,1,1"), &seq("1,2,2,2,1"), 1),
            Err(Error::Infeasible(_))
        ));
        assert!(matches!(
            pack_complementary_leaves(&seq("1,1"), &seq("1,1"), 1),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn shape_violations_are_domain_errors() {
        assert!(matches!(
            pack_complementary_leaves(&seq("2,2,1,1"), &seq("2,1,2,1"), 1),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            pack_complementary_leaves(&seq("2,2,1,1"), &seq("1,1,2,2,0"), 1),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn seven_vertices() {
        let (d, f) = (seq("4,3,1,1,1,1,1"), seq("1,1,3,3,2,1,1"));
        let packed = pack_complementary_leaves(&d, &f, 11).unwrap();
        let [a, b] = packed.trees() else { panic!() };
        assert!(common_edges(a, b).unwrap().is_empty());
        assert_eq!(packed, pack_complementary_leaves(&d, &f, 11).unwrap());
    }

    #[test]
    fn exhaustive_fallback_finds_a_pair() {
        let (d, f) = (seq("3,2,1,1,1"), seq("1,1,2,2,2"));
        let packed = exhaustive(&d, &f).unwrap();
        let [a, b] = packed.trees() else { panic!() };
        assert!(common_edges(a, b).unwrap().is_empty());
    }
}
