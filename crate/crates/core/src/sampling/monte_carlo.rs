use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{require_sampling_instance, required_samples};
use crate::degseq::DegreeSequence;
use crate::error::{domain, Error, Result};
use crate::rational::{self, Rational};
use crate::trees::{count_common, count_trees, LabeledTree, TreeSampler};

/// Parallel layout of a Monte Carlo run. Samples are cut into batches of
/// `batch_size`; batch `b` draws from `ChaCha8Rng::seed_from_u64(seed)` on
/// stream `b`, so the hit count depends only on the seed and the batch size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EstimateConfig {
    pub workers: usize,
    pub batch_size: u64,
}

impl Default for EstimateConfig {
    fn default() -> Self {
        EstimateConfig {
            workers: 1,
            batch_size: 4096,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateReport {
    pub samples_used: u64,
    pub hits: u64,
    #[serde(with = "rational::serde_string")]
    pub p_hat: Rational,
    #[serde(with = "rational::serde_string")]
    pub count_estimate: Rational,
    /// `count_estimate` rounded to `f64`, for display.
    pub count_estimate_approx: f64,
    #[serde(with = "rational::biguint_string")]
    pub trees_d: BigUint,
    #[serde(with = "rational::biguint_string")]
    pub trees_f: BigUint,
    #[serde(with = "rational::serde_string")]
    pub p_lower: Rational,
    pub epsilon: f64,
    pub delta: f64,
    pub seed: u64,
    pub workers: usize,
    pub batch_size: u64,
}

pub fn estimate_disjoint_count(
    d: &DegreeSequence,
    f: &DegreeSequence,
    epsilon: f64,
    delta: f64,
    seed: u64,
) -> Result<EstimateReport> {
    estimate_disjoint_count_with(d, f, epsilon, delta, seed, EstimateConfig::default())
}

/// Estimates the number of edge-disjoint ordered realization pairs as
/// `hits / m * N_D * N_F` from `m = required_samples(p_lower, epsilon, delta)`
/// independent uniform pairs.
pub fn estimate_disjoint_count_with(
    d: &DegreeSequence,
    f: &DegreeSequence,
    epsilon: f64,
    delta: f64,
    seed: u64,
    config: EstimateConfig,
) -> Result<EstimateReport> {
    let analysis = require_sampling_instance(d, f, Error::Domain)?;
    if config.workers == 0 || config.batch_size == 0 {
        return domain("workers and batch size must be positive");
    }
    let samples = required_samples(&analysis.p_lower, epsilon, delta)?;
    let batches = samples.div_ceil(config.batch_size);

    let run_batch = |b: u64| -> Result<u64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(b);
        let len = config.batch_size.min(samples - b * config.batch_size);
        let mut sample_d = TreeSampler::new(d)?;
        let mut sample_f = TreeSampler::new(f)?;
        let mut hits = 0;
        for _ in 0..len {
            let a = sample_d.sample(&mut rng);
            let c = sample_f.sample(&mut rng);
            if count_common(a.edges(), c.edges()) == 0 {
                hits += 1;
            }
        }
        Ok(hits)
    };
    let hits: u64 = if config.workers == 1 {
        (0..batches).map(run_batch).sum::<Result<u64>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .map_err(|e| Error::Resource(format!("cannot start worker pool: {e}")))?;
        pool.install(|| {
            (0..batches)
                .into_par_iter()
                .map(run_batch)
                .sum::<Result<u64>>()
        })?
    };

    let trees_d = count_trees(d)?;
    let trees_f = count_trees(f)?;
    let p_hat = Rational::new(BigInt::from(hits), BigInt::from(samples));
    let count_estimate = &p_hat * rational::from_biguint(&(&trees_d * &trees_f));
    Ok(EstimateReport {
        samples_used: samples,
        hits,
        count_estimate_approx: rational::to_f64(&count_estimate),
        p_hat,
        count_estimate,
        trees_d,
        trees_f,
        p_lower: analysis.p_lower,
        epsilon,
        delta,
        seed,
        workers: config.workers,
        batch_size: config.batch_size,
    })
}

/// An edge-disjoint pair drawn by [`sample_disjoint_pair`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DisjointSample {
    pub first: LabeledTree,
    pub second: LabeledTree,
    /// Pairs drawn, including the accepted one.
    pub attempts: u64,
    /// `ceil(-ln(epsilon) / p_lower)`.
    pub budget: u64,
    /// The budget ran out and sampling continued past it.
    pub fallback: bool,
}

/// Draws uniform realization pairs until one is edge-disjoint. Within the
/// budget `ceil(-ln(epsilon) / p_lower)` the output is within total
/// variation `epsilon` of uniform; past it, sampling simply continues, which
/// keeps the result edge-disjoint.
pub fn sample_disjoint_pair(
    d: &DegreeSequence,
    f: &DegreeSequence,
    epsilon: f64,
    seed: u64,
) -> Result<DisjointSample> {
    let analysis = require_sampling_instance(d, f, Error::Infeasible)?;
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return domain(format!("epsilon = {epsilon} must lie in (0, 1)"));
    }
    debug_assert!(!analysis.p_lower.is_zero());
    let budget = (-epsilon.ln() / rational::to_f64(&analysis.p_lower))
        .ceil()
        .to_u64()
        .unwrap_or(u64::MAX);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sample_d = TreeSampler::new(d)?;
    let mut sample_f = TreeSampler::new(f)?;
    let mut attempts = 0u64;
    loop {
        attempts += 1;
        let first = sample_d.sample(&mut rng);
        let second = sample_f.sample(&mut rng);
        if count_common(first.edges(), second.edges()) == 0 {
            return Ok(DisjointSample {
                first,
                second,
                attempts,
                budget,
                fallback: attempts > budget,
            });
        }
    }
}
