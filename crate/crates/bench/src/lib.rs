//! Fixed instance families shared by the benchmarks.

use domtsp::instance::{gen_bernoulli, gen_planted_clique};
use domtsp::Instance01;

/// `gen_bernoulli(n, 1/2, seed)` for `seed` in `0..count`.
pub fn bernoulli_family(n: usize, count: u64) -> Vec<Instance01> {
    (0..count)
        .map(|seed| gen_bernoulli(n, 0.5, seed).expect("n >= 3"))
        .collect()
}

/// A sparse family: all-zero except a planted clique of ones of size `r`.
pub fn clique_family(n: usize, sizes: &[usize]) -> Vec<Instance01> {
    sizes
        .iter()
        .map(|&r| gen_planted_clique(n, r).expect("r <= n"))
        .collect()
}

/// Instance sizes used by the scaling benchmarks.
pub const SIZES: [usize; 4] = [50, 100, 200, 300];
