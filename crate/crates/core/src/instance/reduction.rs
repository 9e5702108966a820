//! Hamilton path to `{0,1}`-TSP reduction.
//!
//! Given a graph `g` on `n` vertices, the instance on `n'` vertices embeds `g`
//! on the block `S = {0, .., n-1}`: pairs inside `S` weigh 0 exactly when they
//! are edges of `g`, every `S`-to-rest pair weighs 1 and the rest is all 0.
//! Any tour crosses between `S` and its complement at least twice, and weighs
//! exactly 2 iff its restriction to `S` is a Hamilton path of `g`.

use super::{Instance01, InstanceError};
use crate::graph::Graph;

/// Upper limit for the `n'` search in [`reduction_size`].
pub const DEFAULT_REDUCTION_CAP: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct HardnessReduction {
    pub instance: Instance01,
    /// Vertices of the reduced instance carrying the original graph, in the
    /// original vertex order.
    pub s_set: Vec<usize>,
    pub n_prime: usize,
}

/// Smallest `n' > n` with `floor(n'^eps / ln n') >= n`.
pub fn reduction_size(n: usize, eps: f64, cap: usize) -> Result<usize, InstanceError> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(InstanceError::InvalidReductionExponent(eps));
    }
    (n + 1..=cap)
        .find(|&m| {
            let x = m as f64;
            (x.powf(eps) / x.ln()).floor() >= n as f64
        })
        .ok_or(InstanceError::NoReductionSize { n, cap })
}

/// The reduced instance on exactly `n_prime` vertices.
pub fn reduction_instance(g: &Graph, n_prime: usize) -> Result<HardnessReduction, InstanceError> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(InstanceError::ReductionGraphTooSmall(n));
    }
    if n_prime <= n {
        return Err(InstanceError::DimensionMismatch {
            expected: n + 1,
            found: n_prime,
        });
    }
    let mut ones = Graph::new(n_prime);
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) {
                ones.add_edge(u, v);
            }
        }
        for x in n..n_prime {
            ones.add_edge(u, x);
        }
    }
    Ok(HardnessReduction {
        instance: Instance01::from_graph(ones)?,
        s_set: (0..n).collect(),
        n_prime,
    })
}

/// Reduction with `n'` chosen by [`reduction_size`] under the default cap.
pub fn gen_hardness_reduction(g: &Graph, eps: f64) -> Result<HardnessReduction, InstanceError> {
    if g.vertex_count() < 2 {
        return Err(InstanceError::ReductionGraphTooSmall(g.vertex_count()));
    }
    let n_prime = reduction_size(g.vertex_count(), eps, DEFAULT_REDUCTION_CAP)?;
    reduction_instance(g, n_prime)
}
