//! Weightings of `K_n`, `{0,1}`-instances, Hamilton cycles and their I/O.

mod gen;
mod io;
mod reduction;

use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::graph::{binom2, edge, Edge, Graph};
use crate::matching::{self, Matching};
use crate::Rational;

pub use gen::{gen_bernoulli, gen_planted_clique};
pub use io::{
    parse_graph, parse_instance, parse_instance_with_cap, parse_tour, parse_weighting,
    serialize_graph, serialize_instance, serialize_tour, serialize_weighting, ParseError,
    DEFAULT_SIZE_CAP,
};
pub use reduction::{
    gen_hardness_reduction, reduction_instance, reduction_size, HardnessReduction,
    DEFAULT_REDUCTION_CAP,
};

/// Largest common denominator a [`Weighting`] accepts. Keeps every tour and
/// expectation sum comfortably inside `i128`.
pub const MAX_SCALE: i128 = 1 << 40;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InstanceError {
    #[error("need at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Edge),
    #[error("weight {0} outside [-1, 1]")]
    WeightOutOfRange(Rational),
    #[error("common denominator of the weights exceeds {MAX_SCALE}")]
    DenominatorTooLarge,
    #[error("cycle order is not a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("dimension mismatch: expected {expected} vertices, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("clique size {r} outside [2, {n}]")]
    CliqueSizeOutOfRange { r: usize, n: usize },
    #[error("reduction needs a graph with at least 2 vertices, got {0}")]
    ReductionGraphTooSmall(usize),
    #[error("reduction exponent {0} outside (0, 1/2)")]
    InvalidReductionExponent(f64),
    #[error("no reduction size n' <= {cap} satisfies floor(n'^eps / ln n') >= {n}")]
    NoReductionSize { n: usize, cap: usize },
}

/// Symmetric edge weighting of `K_n` with exact rational values in `[-1, 1]`.
///
/// Values are stored as integers over one common positive denominator so that
/// sums over tours and join graphs stay in exact integer arithmetic.
#[derive(Clone, Debug)]
pub struct Weighting {
    n: usize,
    scale: i64,
    num: Vec<i64>,
}

#[inline]
fn tri_index(n: usize, u: usize, v: usize) -> usize {
    let (u, v) = edge(u, v);
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

impl Weighting {
    /// Builds a weighting by evaluating `f(u, v)` once for every pair `u < v`.
    pub fn from_fn<F>(n: usize, mut f: F) -> Result<Self, InstanceError>
    where
        F: FnMut(usize, usize) -> Rational,
    {
        if n < 3 {
            return Err(InstanceError::TooFewVertices(n));
        }
        let mut values = Vec::with_capacity(binom2(n));
        let mut scale: i128 = 1;
        for u in 0..n {
            for v in u + 1..n {
                let w = f(u, v);
                if w.abs() > Rational::one() {
                    return Err(InstanceError::WeightOutOfRange(w));
                }
                scale = scale.lcm(w.denom());
                if scale > MAX_SCALE {
                    return Err(InstanceError::DenominatorTooLarge);
                }
                values.push(w);
            }
        }
        let num = values
            .iter()
            .map(|w| (w.numer() * (scale / w.denom())) as i64)
            .collect();
        Ok(Weighting {
            n,
            scale: scale as i64,
            num,
        })
    }

    /// Weighting with all values `num / scale`, listed for pairs `u < v` in
    /// lexicographic order.
    pub fn from_scaled(n: usize, scale: i64, num: Vec<i64>) -> Result<Self, InstanceError> {
        if n < 3 {
            return Err(InstanceError::TooFewVertices(n));
        }
        if scale <= 0 || scale as i128 > MAX_SCALE {
            return Err(InstanceError::DenominatorTooLarge);
        }
        if num.len() != binom2(n) {
            return Err(InstanceError::DimensionMismatch {
                expected: binom2(n),
                found: num.len(),
            });
        }
        if let Some(&bad) = num.iter().find(|x| x.abs() > scale) {
            return Err(InstanceError::WeightOutOfRange(Rational::new(
                bad as i128,
                scale as i128,
            )));
        }
        Ok(Weighting { n, scale, num })
    }

    pub fn zero(n: usize) -> Result<Self, InstanceError> {
        Weighting::from_scaled(n, 1, vec![0; binom2(n)])
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Common denominator of all stored values.
    #[inline]
    pub fn scale(&self) -> i64 {
        self.scale
    }

    /// `w(uv) * scale`, an integer.
    #[inline]
    pub fn scaled(&self, u: usize, v: usize) -> i64 {
        debug_assert_ne!(u, v);
        self.num[tri_index(self.n, u, v)]
    }

    pub fn weight(&self, u: usize, v: usize) -> Rational {
        Rational::new(self.scaled(u, v) as i128, self.scale as i128)
    }

    /// `w(K_n) * scale`.
    pub fn total_scaled(&self) -> i128 {
        self.num.iter().map(|&x| x as i128).sum()
    }

    /// `w(K_n)`.
    pub fn total(&self) -> Rational {
        Rational::new(self.total_scaled(), self.scale as i128)
    }

    /// `w(E) * scale` for an arbitrary edge collection.
    pub fn sum_scaled<'a, I: IntoIterator<Item = &'a Edge>>(&self, edges: I) -> i128 {
        edges
            .into_iter()
            .map(|&(u, v)| self.scaled(u, v) as i128)
            .sum()
    }
}

/// A `{0,1}`-instance: `K_n` with the listed edges weighing 1 and all others 0.
#[derive(Clone)]
pub struct Instance01 {
    ones: Graph,
    zero_matching: OnceLock<Matching>,
}

impl Instance01 {
    pub fn new<I: IntoIterator<Item = Edge>>(n: usize, one_edges: I) -> Result<Self, InstanceError> {
        if n < 3 {
            return Err(InstanceError::TooFewVertices(n));
        }
        let mut ones = Graph::new(n);
        for (u, v) in one_edges {
            for x in [u, v] {
                if x >= n {
                    return Err(InstanceError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(InstanceError::SelfLoop(u));
            }
            if !ones.add_edge(u, v) {
                return Err(InstanceError::DuplicateEdge(edge(u, v)));
            }
        }
        Ok(Instance01::from_graph_unchecked(ones))
    }

    /// Instance whose weight-1 edges are exactly the edges of `ones`.
    pub fn from_graph(ones: Graph) -> Result<Self, InstanceError> {
        if ones.vertex_count() < 3 {
            return Err(InstanceError::TooFewVertices(ones.vertex_count()));
        }
        Ok(Instance01::from_graph_unchecked(ones))
    }

    fn from_graph_unchecked(ones: Graph) -> Self {
        Instance01 {
            ones,
            zero_matching: OnceLock::new(),
        }
    }

    /// Instance whose weight-0 edges are exactly the edges of `zeros`.
    pub fn from_zero_graph(zeros: &Graph) -> Result<Self, InstanceError> {
        Instance01::from_graph(zeros.complement())
    }

    pub fn all_zero(n: usize) -> Result<Self, InstanceError> {
        Instance01::new(n, [])
    }

    pub fn all_ones(n: usize) -> Result<Self, InstanceError> {
        Instance01::from_graph(Graph::complete(n))
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.ones.vertex_count()
    }

    /// `|one_edges|`, which equals `w(K_n)`.
    #[inline]
    pub fn one_edge_count(&self) -> usize {
        self.ones.edge_count()
    }

    pub fn one_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.ones.edges()
    }

    pub fn one_graph(&self) -> &Graph {
        &self.ones
    }

    /// The graph of weight-0 edges.
    pub fn zero_graph(&self) -> Graph {
        self.ones.complement()
    }

    #[inline]
    pub fn weight(&self, u: usize, v: usize) -> u8 {
        self.ones.has_edge(u, v) as u8
    }

    /// Degree of `v` in the zero-graph.
    pub fn zero_degree(&self, v: usize) -> usize {
        self.vertex_count() - 1 - self.ones.degree(v)
    }

    pub fn density(&self) -> Rational {
        density(self)
    }

    /// Integer weight of a Hamilton cycle.
    pub fn tour_weight(&self, h: &HamiltonCycle) -> Result<usize, InstanceError> {
        check_dimension(self.vertex_count(), h)?;
        Ok(h.edges().filter(|&(u, v)| self.ones.has_edge(u, v)).count())
    }

    pub fn to_weighting(&self) -> Weighting {
        let n = self.vertex_count();
        let mut num = Vec::with_capacity(binom2(n));
        for u in 0..n {
            for v in u + 1..n {
                num.push(self.weight(u, v) as i64);
            }
        }
        Weighting { n, scale: 1, num }
    }

    /// Maximum matching of the zero-graph, computed once per instance.
    pub fn zero_graph_matching(&self) -> &Matching {
        self.zero_matching
            .get_or_init(|| matching::max_matching(&self.zero_graph()))
    }
}

/// Equal when every pair carries the same value, whatever the stored scale.
impl PartialEq for Weighting {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (self.scale as i128, other.scale as i128);
        self.n == other.n && self.num.iter().zip(&other.num).all(|(&x, &y)| x as i128 * b == y as i128 * a)
    }
}

impl Eq for Weighting {}

impl PartialEq for Instance01 {
    fn eq(&self, other: &Self) -> bool {
        self.ones == other.ones
    }
}

impl Eq for Instance01 {}

impl std::fmt::Debug for Instance01 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Instance01")
            .field("n", &self.vertex_count())
            .field("one_edges", &self.one_edges().collect::<Vec<_>>())
            .finish()
    }
}

/// `|one_edges| / C(n, 2)`, exactly.
pub fn density(inst: &Instance01) -> Rational {
    Rational::new(
        inst.one_edge_count() as i128,
        binom2(inst.vertex_count()) as i128,
    )
}

/// Sum of the `n` cyclic edge weights of `h`.
pub fn tour_weight(w: &Weighting, h: &HamiltonCycle) -> Result<Rational, InstanceError> {
    check_dimension(w.vertex_count(), h)?;
    let scaled: i128 = h.edges().map(|(u, v)| w.scaled(u, v) as i128).sum();
    Ok(Rational::new(scaled, w.scale() as i128))
}

fn check_dimension(n: usize, h: &HamiltonCycle) -> Result<(), InstanceError> {
    if h.len() != n {
        return Err(InstanceError::DimensionMismatch {
            expected: n,
            found: h.len(),
        });
    }
    Ok(())
}

/// Hamilton cycle of `K_n` in canonical form: vertex 0 first and the second
/// vertex smaller than the last, which fixes rotation and reflection.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HamiltonCycle {
    order: Vec<usize>,
}

impl HamiltonCycle {
    /// Validates `order` as a cyclic permutation of `0..n` and canonicalizes it.
    pub fn new(mut order: Vec<usize>) -> Result<Self, InstanceError> {
        let n = order.len();
        if n < 3 {
            return Err(InstanceError::TooFewVertices(n));
        }
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(InstanceError::NotAPermutation(n));
            }
        }
        let start = order.iter().position(|&v| v == 0).unwrap();
        order.rotate_left(start);
        if order[1] > order[n - 1] {
            order[1..].reverse();
        }
        Ok(HamiltonCycle { order })
    }

    /// Builds the cycle from its `n` undirected edges.
    pub fn from_edges(n: usize, edges: &[Edge]) -> Result<Self, InstanceError> {
        if n < 3 {
            return Err(InstanceError::TooFewVertices(n));
        }
        if edges.len() != n {
            return Err(InstanceError::NotAPermutation(n));
        }
        let mut adj = vec![Vec::with_capacity(2); n];
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(InstanceError::NotAPermutation(n));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        if adj.iter().any(|a| a.len() != 2) {
            return Err(InstanceError::NotAPermutation(n));
        }
        let mut order = Vec::with_capacity(n);
        let (mut prev, mut cur) = (usize::MAX, 0);
        for _ in 0..n {
            order.push(cur);
            let next = if adj[cur][0] != prev { adj[cur][0] } else { adj[cur][1] };
            prev = cur;
            cur = next;
        }
        if cur != 0 {
            return Err(InstanceError::NotAPermutation(n));
        }
        HamiltonCycle::new(order)
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.order.len()
    }

    /// The `n` cyclic edges, normalized.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let n = self.order.len();
        (0..n).map(move |i| edge(self.order[i], self.order[(i + 1) % n]))
    }

    pub fn contains_edge(&self, u: usize, v: usize) -> bool {
        self.edges().any(|e| e == edge(u, v))
    }

    /// Tour-neighbours of every vertex.
    pub fn neighbor_table(&self) -> Vec<[usize; 2]> {
        let n = self.order.len();
        let mut table = vec![[0; 2]; n];
        for i in 0..n {
            let v = self.order[i];
            table[v] = [self.order[(i + n - 1) % n], self.order[(i + 1) % n]];
        }
        table
    }
}

impl From<HamiltonCycle> for Vec<usize> {
    fn from(h: HamiltonCycle) -> Self {
        h.order
    }
}

/// Double approximation of an exact rational.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        0.0
    } else {
        *r.numer() as f64 / *r.denom() as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i128, b: i128) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn density_examples() {
        assert_eq!(density(&Instance01::all_zero(4).unwrap()), r(0, 1));
        assert_eq!(density(&Instance01::all_ones(4).unwrap()), r(1, 1));
        let star = Instance01::new(6, (1..6).map(|v| (0, v))).unwrap();
        assert_eq!(density(&star), r(1, 3));
    }

    #[test]
    fn tour_weight_examples() {
        let h = HamiltonCycle::new(vec![0, 1, 2, 3, 4]).unwrap();
        assert_eq!(tour_weight(&Weighting::zero(5).unwrap(), &h).unwrap(), r(0, 1));
        let ones = Instance01::all_ones(4).unwrap();
        let h4 = HamiltonCycle::new(vec![2, 0, 3, 1]).unwrap();
        assert_eq!(ones.tour_weight(&h4).unwrap(), 4);
        assert_eq!(tour_weight(&ones.to_weighting(), &h4).unwrap(), r(4, 1));
        let inst = Instance01::new(5, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(inst.tour_weight(&h).unwrap(), 2);
        assert_eq!(tour_weight(&inst.to_weighting(), &h).unwrap(), r(2, 1));
    }

    #[test]
    fn tour_weight_dimension_mismatch() {
        let h = HamiltonCycle::new(vec![0, 1, 2, 3]).unwrap();
        let err = tour_weight(&Weighting::zero(5).unwrap(), &h).unwrap_err();
        assert_eq!(err, InstanceError::DimensionMismatch { expected: 5, found: 4 });
    }

    #[test]
    fn canonical_form() {
        let h = HamiltonCycle::new(vec![3, 1, 0, 4, 2]).unwrap();
        assert_eq!(h.order(), &[0, 1, 3, 2, 4]);
        let g = HamiltonCycle::new(vec![0, 4, 2, 3, 1]).unwrap();
        assert_eq!(h, g);
        assert!(HamiltonCycle::new(vec![0, 1, 1]).is_err());
        assert!(HamiltonCycle::new(vec![0, 1]).is_err());
    }

    #[test]
    fn cycle_from_edges() {
        let h = HamiltonCycle::from_edges(4, &[(0, 2), (1, 3), (0, 1), (2, 3)]).unwrap();
        assert_eq!(h.order(), &[0, 1, 3, 2]);
        // two triangles are not a Hamilton cycle
        let bad = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)];
        assert!(HamiltonCycle::from_edges(6, &bad).is_err());
    }

    #[test]
    fn weighting_common_denominator() {
        let w = Weighting::from_fn(4, |u, v| r((u + v) as i128 - 3, 6)).unwrap();
        assert_eq!(w.scale(), 6);
        assert_eq!(w.weight(0, 3), r(0, 1));
        assert_eq!(w.weight(2, 1), r(0, 1));
        assert_eq!(w.weight(0, 1), r(-1, 3));
        assert_eq!(w.total(), r(0, 1));
        assert!(matches!(
            Weighting::from_fn(3, |_, _| r(3, 2)),
            Err(InstanceError::WeightOutOfRange(_))
        ));
    }

    #[test]
    fn instance_rejects_bad_edges() {
        assert_eq!(Instance01::new(2, []).unwrap_err(), InstanceError::TooFewVertices(2));
        assert_eq!(Instance01::new(3, [(1, 1)]).unwrap_err(), InstanceError::SelfLoop(1));
        assert_eq!(
            Instance01::new(3, [(0, 1), (1, 0)]).unwrap_err(),
            InstanceError::DuplicateEdge((0, 1))
        );
        assert!(matches!(
            Instance01::new(3, [(0, 3)]),
            Err(InstanceError::VertexOutOfRange { vertex: 3, n: 3 })
        ));
    }
}
