//! Matchings: maximum matching in general graphs, minimum-weight optimal
//! matchings of `{0,1}`-instances, and maximum double matchings.

mod bipartite;
mod blossom;

use thiserror::Error;

use crate::graph::{binom2, edge, Edge, Graph};
use crate::instance::Instance01;

pub use bipartite::{bipartite_subgraph, max_double_matching};
pub use blossom::max_matching;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatchingError {
    #[error("edges {0:?} and {1:?} share a vertex")]
    NotDisjoint(Edge, Edge),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex {0} lies on both sides")]
    SidesOverlap(usize),
    #[error("edge {0:?} does not join the two sides")]
    EdgeOutsideSides(Edge),
    #[error("matching size s = {s} outside [1, {max}]")]
    SizeOutOfRange { s: usize, max: usize },
    #[error("density {d} outside [1/n, 1 - 4/n] for n = {n}")]
    DensityOutOfRange { n: usize, d: f64 },
}

/// A set of pairwise vertex-disjoint edges of a graph on `n` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    n: usize,
    edges: Vec<Edge>,
}

impl Matching {
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self, MatchingError> {
        let mut owner: Vec<Option<Edge>> = vec![None; n];
        let mut out = Vec::new();
        for (u, v) in edges {
            let e = edge(u, v);
            for x in [e.0, e.1] {
                if x >= n {
                    return Err(MatchingError::VertexOutOfRange { vertex: x, n });
                }
                if let Some(f) = owner[x] {
                    return Err(MatchingError::NotDisjoint(f, e));
                }
            }
            if e.0 == e.1 {
                return Err(MatchingError::NotDisjoint(e, e));
            }
            owner[e.0] = Some(e);
            owner[e.1] = Some(e);
            out.push(e);
        }
        out.sort_unstable();
        Ok(Matching { n, edges: out })
    }

    pub(crate) fn from_mates(mate: &[usize]) -> Self {
        let edges = mate
            .iter()
            .enumerate()
            .filter(|&(u, &v)| v != usize::MAX && u < v)
            .map(|(u, &v)| (u, v))
            .collect();
        Matching {
            n: mate.len(),
            edges,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    /// Edges in ascending order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Optimal in the sense of `K_n`: exactly `floor(n/2)` edges.
    pub fn is_optimal(&self) -> bool {
        self.edges.len() == self.n / 2
    }

    pub fn mates(&self) -> Vec<Option<usize>> {
        let mut mate = vec![None; self.n];
        for &(u, v) in &self.edges {
            mate[u] = Some(v);
            mate[v] = Some(u);
        }
        mate
    }

    pub fn unmatched(&self) -> Vec<usize> {
        self.mates()
            .iter()
            .enumerate()
            .filter_map(|(v, m)| m.is_none().then_some(v))
            .collect()
    }

    /// Whether every edge is an edge of `g`.
    pub fn is_subgraph_of(&self, g: &Graph) -> bool {
        self.edges.iter().all(|&(u, v)| g.has_edge(u, v))
    }
}

/// Bipartite subgraph with degree at most 2 on `a_side` and at most 1 on
/// `b_side`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleMatching {
    a_side: Vec<usize>,
    b_side: Vec<usize>,
    /// `(a, b)` pairs, sorted.
    pairs: Vec<(usize, usize)>,
}

impl DoubleMatching {
    pub(crate) fn from_parts(
        mut a_side: Vec<usize>,
        mut b_side: Vec<usize>,
        mut pairs: Vec<(usize, usize)>,
    ) -> Self {
        a_side.sort_unstable();
        b_side.sort_unstable();
        pairs.sort_unstable();
        DoubleMatching {
            a_side,
            b_side,
            pairs,
        }
    }

    pub fn a_side(&self) -> &[usize] {
        &self.a_side
    }

    pub fn b_side(&self) -> &[usize] {
        &self.b_side
    }

    /// `(a, b)` pairs with `a` on the capacity-2 side.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.pairs.iter().map(|&(a, b)| edge(a, b))
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    /// Partners of `a` on the b-side, ascending.
    pub fn partners(&self, a: usize) -> Vec<usize> {
        self.pairs
            .iter()
            .filter(|&&(x, _)| x == a)
            .map(|&(_, b)| b)
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.pairs.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub(crate) fn push(&mut self, a: usize, b: usize) {
        let at = self.pairs.partition_point(|&p| p < (a, b));
        self.pairs.insert(at, (a, b));
    }

    /// Checks the degree caps.
    pub fn is_valid(&self) -> bool {
        self.a_side.iter().all(|&a| self.degree(a) <= 2)
            && self.b_side.iter().all(|&b| self.degree(b) <= 1)
            && self
                .pairs
                .iter()
                .all(|(a, b)| self.a_side.binary_search(a).is_ok() && self.b_side.binary_search(b).is_ok())
    }
}

/// Optimal matching of `K_n` with the fewest weight-1 edges: a maximum
/// matching of the zero-graph, then the remaining vertices paired in
/// ascending order. Unmatched zero-graph vertices are pairwise non-adjacent
/// in the zero-graph, so no cheaper completion exists.
pub fn min_weight_optimal_matching_01(inst: &Instance01) -> Matching {
    let n = inst.vertex_count();
    let zero = inst.zero_graph_matching();
    let mut edges = zero.edges().to_vec();
    let left = zero.unmatched();
    for pair in left.chunks_exact(2) {
        edges.push((pair[0], pair[1]));
    }
    let m = Matching::new(n, edges).expect("completion keeps edges disjoint");
    debug_assert!(m.is_optimal());
    m
}

/// Weight of the minimum-weight optimal matching, `floor(n/2) - nu(G_0)`.
pub fn min_matching_weight_01(inst: &Instance01) -> usize {
    let n = inst.vertex_count();
    n / 2 - inst.zero_graph_matching().len().min(n / 2)
}

/// Number of weight-1 edges of a matching.
pub fn matching_weight_01(inst: &Instance01, m: &Matching) -> usize {
    m.edges()
        .iter()
        .filter(|&&(u, v)| inst.weight(u, v) == 1)
        .count()
}

/// Fewest edges that force an `s`-matching in every `n`-vertex graph:
/// `max{C(2s-1, 2), C(n, 2) - C(n-s+1, 2)} + 1`.
pub fn erdos_gallai_threshold(n: usize, s: usize) -> Result<usize, MatchingError> {
    if s < 1 || s > n / 2 {
        return Err(MatchingError::SizeOutOfRange { s, max: n / 2 });
    }
    Ok(binom2(2 * s - 1).max(binom2(n) - binom2(n - s + 1)) + 1)
}

fn check_density(n: usize, d: f64) -> Result<(), MatchingError> {
    let nf = n as f64;
    if n == 0 || d < 1.0 / nf || d > 1.0 - 4.0 / nf {
        return Err(MatchingError::DensityOutOfRange { n, d });
    }
    Ok(())
}

/// `g(n, d) = floor(min{sqrt(1-d) n / 2, (1 - sqrt d) n})`, the matching size
/// of the zero-graph guaranteed by the Erdős–Gallai bound when a fraction `d`
/// of the pairs weighs 1.
pub fn guaranteed_matching_size(n: usize, d: f64) -> Result<usize, MatchingError> {
    check_density(n, d)?;
    let (first, second) = matching_size_terms(n, d);
    let x = first.min(second);
    // absorb rounding such as (1 - sqrt 0.81) * 100 = 9.999..
    Ok((x + 1e-9 * x.max(1.0)).floor() as usize)
}

/// The two expressions inside [`guaranteed_matching_size`].
pub fn matching_size_terms(n: usize, d: f64) -> (f64, f64) {
    let nf = n as f64;
    (0.5 * (1.0 - d).sqrt() * nf, (1.0 - d.sqrt()) * nf)
}

/// Upper bound `f(n, d)` on the minimum optimal-matching weight:
/// `dn/2 - dn/8 + 1` for `d <= 9/25`, `dn/2 - (1-d)^2 n / 8 + 1` above.
pub fn matching_weight_bound(n: usize, d: f64) -> Result<f64, MatchingError> {
    check_density(n, d)?;
    let nf = n as f64;
    Ok(if d <= 9.0 / 25.0 {
        0.5 * d * nf - d * nf / 8.0 + 1.0
    } else {
        0.5 * d * nf - (1.0 - d).powi(2) * nf / 8.0 + 1.0
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matching_validation() {
        assert!(Matching::new(4, [(0, 1), (2, 3)]).unwrap().is_optimal());
        assert_eq!(
            Matching::new(4, [(0, 1), (1, 2)]).unwrap_err(),
            MatchingError::NotDisjoint((0, 1), (1, 2))
        );
        assert!(Matching::new(3, [(0, 3)]).is_err());
        let m = Matching::new(5, [(3, 1)]).unwrap();
        assert_eq!(m.edges(), &[(1, 3)]);
        assert_eq!(m.unmatched(), vec![0, 2, 4]);
        assert!(!m.is_optimal());
    }

    #[test]
    fn min_weight_examples() {
        let zero = Instance01::all_zero(6).unwrap();
        let m = min_weight_optimal_matching_01(&zero);
        assert!(m.is_optimal());
        assert_eq!(matching_weight_01(&zero, &m), 0);

        let ones = Instance01::all_ones(6).unwrap();
        let m = min_weight_optimal_matching_01(&ones);
        assert_eq!(m.edges(), &[(0, 1), (2, 3), (4, 5)]);
        assert_eq!(matching_weight_01(&ones, &m), 3);

        // zero-graph is the star K_{1,5}
        let star = Graph::from_edges(6, (1..6).map(|v| (0, v)));
        let inst = Instance01::from_zero_graph(&star).unwrap();
        let m = min_weight_optimal_matching_01(&inst);
        assert_eq!(matching_weight_01(&inst, &m), 2);
        assert_eq!(min_matching_weight_01(&inst), 2);
    }

    #[test]
    fn odd_n_leaves_one_vertex() {
        let inst = Instance01::all_ones(7).unwrap();
        let m = min_weight_optimal_matching_01(&inst);
        assert!(m.is_optimal());
        assert_eq!(m.unmatched(), vec![6]);
    }

    #[test]
    fn erdos_gallai_examples() {
        assert_eq!(erdos_gallai_threshold(4, 2).unwrap(), 4);
        assert_eq!(erdos_gallai_threshold(5, 1).unwrap(), 1);
        assert_eq!(erdos_gallai_threshold(10, 3).unwrap(), 18);
        assert!(erdos_gallai_threshold(10, 0).is_err());
        assert!(erdos_gallai_threshold(10, 6).is_err());
    }

    #[test]
    fn guaranteed_size_examples() {
        for n in [25, 100, 1000] {
            let (a, b) = matching_size_terms(n, 9.0 / 25.0);
            assert!((a - 0.4 * n as f64).abs() < 1e-9 && (b - 0.4 * n as f64).abs() < 1e-9);
        }
        assert_eq!(guaranteed_matching_size(100, 0.25).unwrap(), 43);
        assert_eq!(guaranteed_matching_size(100, 0.81).unwrap(), 10);
        assert!(guaranteed_matching_size(100, 0.005).is_err());
        assert!(guaranteed_matching_size(100, 0.97).is_err());
    }

    #[test]
    fn weight_bound_branches_meet_min_matching() {
        // f(n, d) bounds n/2 - g(n, d) from above whenever the hypothesis holds
        for n in [20usize, 50, 200] {
            for k in 1..100 {
                let d = k as f64 / 100.0;
                if let (Ok(g), Ok(f)) = (guaranteed_matching_size(n, d), matching_weight_bound(n, d)) {
                    assert!(n as f64 / 2.0 - g as f64 <= f + 1e-9, "n={n} d={d}");
                }
            }
        }
    }
}
