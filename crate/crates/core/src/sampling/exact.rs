//! Brute-force oracles over the full realization spaces.

use num_bigint::BigUint;

use crate::degseq::DegreeSequence;
use crate::error::{Error, Result};
use crate::packing::require_pair;
use crate::trees::{count_common, enumerate_trees, LabeledTree};

/// Default vertex limit for the exhaustive oracles.
pub const DEFAULT_GUARD_N: usize = 8;

/// Largest `n` whose edge set fits a `u128` mask.
const MASK_LIMIT: usize = 16;

/// Number of ordered edge-disjoint pairs `(T1, T2)` with `T1` realizing `d`
/// and `T2` realizing `f`, by double enumeration.
pub fn exact_disjoint_count(
    d: &DegreeSequence,
    f: &DegreeSequence,
    guard_n: usize,
) -> Result<BigUint> {
    let mut count = BigUint::default();
    for_each_disjoint(d, f, guard_n, |_, _| count += 1u32)?;
    Ok(count)
}

/// Every ordered edge-disjoint pair, in enumeration order of `d` then `f`.
pub fn disjoint_pairs(
    d: &DegreeSequence,
    f: &DegreeSequence,
    guard_n: usize,
) -> Result<Vec<(LabeledTree, LabeledTree)>> {
    let mut pairs = Vec::new();
    for_each_disjoint(d, f, guard_n, |a, b| pairs.push((a.clone(), b.clone())))?;
    Ok(pairs)
}

fn for_each_disjoint<V>(
    d: &DegreeSequence,
    f: &DegreeSequence,
    guard_n: usize,
    mut visit: V,
) -> Result<()>
where
    V: FnMut(&LabeledTree, &LabeledTree),
{
    require_pair(d, f)?;
    let n = d.len();
    if n > guard_n {
        return Err(Error::Resource(format!(
            "exhaustive enumeration limited to n <= {guard_n}, got n = {n}"
        )));
    }
    let inner: Vec<LabeledTree> = enumerate_trees(f)?.collect();
    if n <= MASK_LIMIT {
        let masks: Vec<u128> = inner.iter().map(LabeledTree::edge_mask).collect();
        for a in enumerate_trees(d)? {
            let mask = a.edge_mask();
            for (b, &m) in inner.iter().zip(&masks) {
                if mask & m == 0 {
                    visit(&a, b);
                }
            }
        }
    } else {
        for a in enumerate_trees(d)? {
            for b in inner.iter() {
                if count_common(a.edges(), b.edges()) == 0 {
                    visit(&a, b);
                }
            }
        }
    }
    Ok(())
}
