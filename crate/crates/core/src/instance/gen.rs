use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Instance01, InstanceError};
use crate::graph::Graph;

/// Erdős–Rényi style instance: every pair independently weighs 1 with
/// probability `p`. Pairs are drawn in lexicographic order from a ChaCha8
/// stream seeded with `seed`, so the output depends only on `(n, p, seed)`.
pub fn gen_bernoulli(n: usize, p: f64, seed: u64) -> Result<Instance01, InstanceError> {
    if n < 3 {
        return Err(InstanceError::TooFewVertices(n));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(InstanceError::InvalidProbability(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ones = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                ones.add_edge(u, v);
            }
        }
    }
    Instance01::from_graph(ones)
}

/// All pairs inside the last `r` vertices weigh 1, everything else 0.
pub fn gen_planted_clique(n: usize, r: usize) -> Result<Instance01, InstanceError> {
    if n < 3 {
        return Err(InstanceError::TooFewVertices(n));
    }
    if r < 2 || r > n {
        return Err(InstanceError::CliqueSizeOutOfRange { r, n });
    }
    let mut ones = Graph::new(n);
    for u in n - r..n {
        for v in u + 1..n {
            ones.add_edge(u, v);
        }
    }
    Instance01::from_graph(ones)
}
