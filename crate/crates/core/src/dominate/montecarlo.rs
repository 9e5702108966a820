use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::DominateError;
use crate::instance::{HamiltonCycle, Instance01};

pub const MIN_SAMPLES: u64 = 100;
/// Samples drawn from one random stream. Blocks, not workers, own streams,
/// so the count does not depend on the worker count.
pub const BLOCK_SIZE: u64 = 4096;
const Z_95: f64 = 1.959_963_984_540_054;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub lower: f64,
    pub upper: f64,
    pub halfwidth: f64,
    pub hits: u64,
    pub samples: u64,
    pub seed: u64,
}

impl McEstimate {
    pub fn covers(&self, p: f64) -> bool {
        self.lower <= p && p <= self.upper
    }
}

/// Wilson score interval `(lower, upper)` for `hits` successes in `n` trials.
pub fn wilson_interval(hits: u64, n: u64) -> (f64, f64) {
    let nf = n as f64;
    let p = hits as f64 / nf;
    let z2 = Z_95 * Z_95;
    let denom = 1.0 + z2 / nf;
    let center = (p + z2 / (2.0 * nf)) / denom;
    let spread = Z_95 * (p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)).sqrt() / denom;
    ((center - spread).max(0.0), (center + spread).min(1.0))
}

fn sample_block(rows: &[u16], threshold: usize, seed: u64, block: u64, count: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    let n = rows.len();
    let mut order: Vec<usize> = (0..n).collect();
    let mut hits = 0;
    for _ in 0..count {
        order[1..].shuffle(&mut rng);
        let mut w = (rows[order[n - 1]] >> order[0] & 1) as usize;
        for i in 1..n {
            w += (rows[order[i - 1]] >> order[i] & 1) as usize;
        }
        if w >= threshold {
            hits += 1;
        }
    }
    hits
}

/// Monte Carlo estimate of the domination fraction of `tour`. A uniform
/// permutation of `1..n` after the fixed vertex 0 gives a uniform cycle.
pub fn domination_mc(
    inst: &Instance01,
    tour: &HamiltonCycle,
    samples: u64,
    seed: u64,
    workers: usize,
) -> Result<McEstimate, DominateError> {
    if samples < MIN_SAMPLES {
        return Err(DominateError::TooFewSamples(samples));
    }
    if workers == 0 {
        return Err(DominateError::NoWorkers);
    }
    let n = inst.vertex_count();
    if tour.len() != n {
        return Err(DominateError::Inconsistent("tour length differs from n"));
    }
    if n > 16 {
        return Err(DominateError::TooLarge { n, max: 16 });
    }
    let threshold = inst.tour_weight(tour)?;
    let rows: Vec<u16> = (0..n)
        .map(|u| (0..n).filter(|&v| v != u && inst.weight(u, v) == 1).fold(0u16, |m, v| m | 1 << v))
        .collect();
    let blocks = samples.div_ceil(BLOCK_SIZE);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|_| DominateError::NoWorkers)?;
    let counts: Vec<u64> = pool.install(|| {
        (0..blocks)
            .into_par_iter()
            .map(|b| {
                let count = BLOCK_SIZE.min(samples - b * BLOCK_SIZE);
                sample_block(&rows, threshold, seed, b, count)
            })
            .collect()
    });
    let hits: u64 = counts.iter().sum();
    let (lower, upper) = wilson_interval(hits, samples);
    Ok(McEstimate {
        estimate: hits as f64 / samples as f64,
        lower,
        upper,
        halfwidth: (upper - lower) / 2.0,
        hits,
        samples,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guards() {
        let inst = Instance01::all_zero(5).unwrap();
        let tour = HamiltonCycle::new((0..5).collect()).unwrap();
        assert!(matches!(domination_mc(&inst, &tour, 0, 1, 1), Err(DominateError::TooFewSamples(0))));
        assert!(domination_mc(&inst, &tour, 100, 1, 0).is_err());
        let est = domination_mc(&inst, &tour, 1000, 1, 1).unwrap();
        assert_eq!(est.estimate, 1.0);
        assert!(est.halfwidth < 0.002);
    }

    #[test]
    fn worker_count_does_not_matter() {
        let inst = crate::instance::gen_bernoulli(9, 0.5, 3).unwrap();
        let tour = HamiltonCycle::new((0..9).collect()).unwrap();
        let a = domination_mc(&inst, &tour, 10_000, 42, 1).unwrap();
        let b = domination_mc(&inst, &tour, 10_000, 42, 4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn wilson_known_value() {
        // 50 of 100: center 0.5, spread z sqrt(0.0025 + z^2/40000) / (1 + z^2/100)
        let (lo, hi) = wilson_interval(50, 100);
        assert!((lo - 0.403_831_4).abs() < 1e-6, "{lo}");
        assert!((hi - 0.596_168_6).abs() < 1e-6);
    }
}
