//! Expected overlap of random realizations, Monte Carlo counting and
//! almost-uniform sampling of edge-disjoint pairs.
//!
//! All logarithms are natural. Probabilities and counts are exact rationals;
//! `epsilon`, `delta` and total-variation distances are `f64`.

mod exact;
mod monte_carlo;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::degseq::DegreeSequence;
use crate::error::{domain, Error, Result};
use crate::packing::complementary_leaf_packable;
use crate::rational::{self, ratio, Rational};

pub use exact::{disjoint_pairs, exact_disjoint_count, DEFAULT_GUARD_N};
pub use monte_carlo::{
    estimate_disjoint_count, estimate_disjoint_count_with, sample_disjoint_pair, DisjointSample,
    EstimateConfig, EstimateReport,
};

/// Leaf partition and overlap statistics of a pair of tree sequences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairAnalysis {
    /// Vertices with `d_i > 1` and `f_i = 1`.
    pub a: Vec<usize>,
    /// Vertices with `d_i = 1` and `f_i > 1`.
    pub b: Vec<usize>,
    /// `sum_{i in A, j in B} (d_i - 1)(f_j - 1) / (n - 2)^2`.
    #[serde(with = "rational::serde_string")]
    pub expected_common: Rational,
    /// Lower bound on the probability that two uniform realizations are
    /// disjoint; zero unless `|A|, |B| >= 2`.
    #[serde(with = "rational::serde_string")]
    pub p_lower: Rational,
}

/// Fills in `A`, `B`, the `A x B` expected overlap and the disjointness
/// lower bound
/// `(d_i1 - 1)(d_i2 - 1)(f_j1 - 1)(f_j2 - 1) / ((n-2)^2 (n-3)^2)` with
/// `i1, i2` (resp. `j1, j2`) the two largest entries of `A` (resp. `B`).
pub fn analyze_pair(d: &DegreeSequence, f: &DegreeSequence) -> Result<PairAnalysis> {
    crate::packing::require_pair(d, f)?;
    let n = d.len();
    if n < 4 {
        return domain(format!("pair analysis needs n >= 4, got {n}"));
    }
    let a: Vec<usize> = (1..=n)
        .filter(|&v| d.degree(v) > 1 && f.degree(v) == 1)
        .collect();
    let b: Vec<usize> = (1..=n)
        .filter(|&v| d.degree(v) == 1 && f.degree(v) > 1)
        .collect();

    let sum_a: usize = a.iter().map(|&v| d.degree(v) - 1).sum();
    let sum_b: usize = b.iter().map(|&v| f.degree(v) - 1).sum();
    let expected_common = ratio(sum_a * sum_b, (n - 2) * (n - 2));

    let top_two = |vs: &[usize], s: &DegreeSequence| -> Option<usize> {
        let mut w: Vec<usize> = vs.iter().map(|&v| s.degree(v) - 1).collect();
        w.sort_unstable_by(|x, y| y.cmp(x));
        (w.len() >= 2).then(|| w[0] * w[1])
    };
    let p_lower = match (top_two(&a, d), top_two(&b, f)) {
        (Some(x), Some(y)) => {
            let den = BigInt::from((n - 2) * (n - 3));
            Rational::new(BigInt::from(x) * BigInt::from(y), &den * &den)
        }
        _ => Rational::zero(),
    };
    Ok(PairAnalysis {
        a,
        b,
        expected_common,
        p_lower,
    })
}

/// Exact expected number of shared edges of independent uniform
/// realizations, for any leaf overlap:
/// `sum_{i<j} (d_i + d_j - 2)(f_i + f_j - 2) / (n - 2)^2`.
pub fn expected_common_general(d: &DegreeSequence, f: &DegreeSequence) -> Result<Rational> {
    crate::packing::require_pair(d, f)?;
    let n = d.len();
    if n < 3 {
        return domain(format!("expected overlap needs n >= 3, got {n}"));
    }
    let mut total = BigInt::zero();
    for i in 1..=n {
        for j in i + 1..=n {
            let pd = d.degree(i) + d.degree(j) - 2;
            let pf = f.degree(i) + f.degree(j) - 2;
            total += BigInt::from(pd * pf);
        }
    }
    Ok(Rational::new(total, BigInt::from((n - 2) * (n - 2))))
}

/// Samples needed for a `(1 + epsilon)` estimate with confidence
/// `1 - delta` when the success probability is at least `p`: the larger of
/// `-2 ln(delta/2) / (p eps^2)` and `-2 (1-p) ln(delta/2) / (p^2 eps^2)`,
/// rounded up.
pub fn required_samples(p: &Rational, epsilon: f64, delta: f64) -> Result<u64> {
    if *p <= Rational::zero() || *p > Rational::one() {
        return domain(format!("p = {} must lie in (0, 1]", rational::display(p)));
    }
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return domain(format!("epsilon = {epsilon} must be positive"));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return domain(format!("delta = {delta} must lie in (0, 1)"));
    }
    let p = rational::to_f64(p);
    let log_term = -2.0 * (delta / 2.0).ln();
    let lower_tail = log_term / (p * epsilon * epsilon);
    let upper_tail = (1.0 - p) * log_term / (p * p * epsilon * epsilon);
    Ok(lower_tail.max(upper_tail).ceil() as u64)
}

/// Half the L1 distance between two distributions over the same index set.
pub fn tv_distance(p: &[f64], q: &[f64]) -> Result<f64> {
    crate::error::check_dims(p.len(), q.len())?;
    for (name, dist) in [("p", p), ("q", q)] {
        if dist.iter().any(|&x| !(0.0..=1.0 + 1e-9).contains(&x)) {
            return domain(format!("{name} has an entry outside [0, 1]"));
        }
        let total: f64 = dist.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return domain(format!("{name} sums to {total}, not 1"));
        }
    }
    Ok(0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>())
}

/// Complementary leaves, no star, `n >= 4`. A star is reported through
/// `star_error`, every other violation as a domain error.
pub(crate) fn require_sampling_instance(
    d: &DegreeSequence,
    f: &DegreeSequence,
    star_error: fn(String) -> Error,
) -> Result<PairAnalysis> {
    if !complementary_leaf_packable(d, f)? {
        return Err(star_error(format!(
            "one sequence is a star on {} vertices; no disjoint pair exists",
            d.len()
        )));
    }
    analyze_pair(d, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> DegreeSequence {
        s.parse().unwrap()
    }

    #[test]
    fn analysis_examples() {
        let an = analyze_pair(&seq("2,2,1,1"), &seq("1,1,2,2")).unwrap();
        assert_eq!(an.a, vec![1, 2]);
        assert_eq!(an.b, vec![3, 4]);
        assert_eq!(an.expected_common, ratio(1, 1));
        assert_eq!(an.p_lower, ratio(1, 4));

        let an = analyze_pair(&seq("3,1,1,1"), &seq("1,3,1,1")).unwrap();
        assert_eq!(an.expected_common, ratio(1, 1));
        assert_eq!(an.p_lower, ratio(0, 1));

        let an = analyze_pair(&seq("2,2,1,1"), &seq("2,2,1,1")).unwrap();
        assert!(an.a.is_empty() && an.b.is_empty());
        assert_eq!(an.expected_common, ratio(0, 1));

        assert!(analyze_pair(&seq("2,1,1"), &seq("2,1,1")).is_err());
    }

    #[test]
    fn general_expectation_examples() {
        assert_eq!(
            expected_common_general(&seq("2,1,1"), &seq("2,1,1")).unwrap(),
            ratio(2, 1)
        );
        assert_eq!(
            expected_common_general(&seq("2,2,1,1"), &seq("1,1,2,2")).unwrap(),
            ratio(1, 1)
        );
        assert_eq!(
            expected_common_general(&seq("3,1,1,1"), &seq("1,3,1,1")).unwrap(),
            ratio(1, 1)
        );
        assert!(expected_common_general(&seq("1,1"), &seq("1,1")).is_err());
    }

    #[test]
    fn sample_bounds() {
        assert_eq!(required_samples(&ratio(1, 2), 0.1, 0.05).unwrap(), 1476);
        assert_eq!(required_samples(&ratio(1, 4), 0.2, 0.1).unwrap(), 1798);
        let first_bound = (-2.0 * (0.05f64 / 2.0).ln() / (0.3 * 0.3)).ceil() as u64;
        assert_eq!(
            required_samples(&ratio(1, 1), 0.3, 0.05).unwrap(),
            first_bound
        );
        assert!(required_samples(&ratio(0, 1), 0.1, 0.1).is_err());
        assert!(required_samples(&ratio(3, 2), 0.1, 0.1).is_err());
        assert!(required_samples(&ratio(1, 2), 0.0, 0.1).is_err());
        assert!(required_samples(&ratio(1, 2), 0.1, 1.0).is_err());
    }

    #[test]
    fn total_variation() {
        assert_eq!(tv_distance(&[0.3, 0.7], &[0.3, 0.7]).unwrap(), 0.0);
        assert_eq!(tv_distance(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 1.0);
        assert!((tv_distance(&[0.75, 0.25], &[0.5, 0.5]).unwrap() - 0.25).abs() < 1e-15);
        assert!(tv_distance(&[0.5, 0.6], &[0.5, 0.5]).is_err());
        assert!(tv_distance(&[1.0], &[0.5, 0.5]).is_err());
    }
}
