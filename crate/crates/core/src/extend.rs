//! Extension of an optimal matching to a Hamilton cycle by conditional
//! expectations.
//!
//! A [`PathSystem`] with `i >= 2` paths is completed to a uniformly random
//! Hamilton cycle by joining path ends; every edge of the join graph `J` is
//! then used with probability `1/(2(i-1))`, which gives the exact expectation
//! `w(E) + sum_J / (2(i-1))`. Repeatedly adding the join edge with the smallest
//! resulting expectation never increases it, and the final closing step turns
//! the expectation into the weight of the tour.

use thiserror::Error;

use crate::graph::{edge, Edge};
use crate::instance::{HamiltonCycle, Instance01, InstanceError, Weighting};
use crate::matching::{min_weight_optimal_matching_01, Matching};
use crate::Rational;

const NONE: usize = usize::MAX;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExtendError {
    #[error("edges do not form vertex-disjoint non-trivial paths: {0}")]
    NotAPathSystem(&'static str),
    #[error("join graph needs at least two paths")]
    SinglePath,
    #[error("edge {0:?} does not join ends of two distinct paths")]
    NotInJoinGraph(Edge),
    #[error("matching is not optimal for n = {0}")]
    NotOptimal(usize),
    #[error("matching has {found} vertices, weighting has {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// Integer-scaled edge weights shared by [`Weighting`] and [`Instance01`].
pub(crate) trait ScaledWeights {
    fn vertex_count(&self) -> usize;
    fn scale(&self) -> i64;
    fn scaled(&self, u: usize, v: usize) -> i64;

    fn total_scaled(&self) -> i128 {
        let n = self.vertex_count();
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .map(|(u, v)| self.scaled(u, v) as i128)
            .sum()
    }
}

impl ScaledWeights for Weighting {
    fn vertex_count(&self) -> usize {
        Weighting::vertex_count(self)
    }
    fn scale(&self) -> i64 {
        Weighting::scale(self)
    }
    fn scaled(&self, u: usize, v: usize) -> i64 {
        Weighting::scaled(self, u, v)
    }
    fn total_scaled(&self) -> i128 {
        Weighting::total_scaled(self)
    }
}

impl ScaledWeights for Instance01 {
    fn vertex_count(&self) -> usize {
        Instance01::vertex_count(self)
    }
    fn scale(&self) -> i64 {
        1
    }
    fn scaled(&self, u: usize, v: usize) -> i64 {
        self.weight(u, v) as i64
    }
    fn total_scaled(&self) -> i128 {
        self.one_edge_count() as i128
    }
}

/// `w` on `n + 1` vertices where the new vertex `n` copies the weights of
/// `twin`, and the pair `{twin, n}` weighs 0.
struct WithTwin<'a, W> {
    inner: &'a W,
    twin: usize,
}

impl<W: ScaledWeights> WithTwin<'_, W> {
    fn lift(&self, x: usize) -> usize {
        if x == self.inner.vertex_count() {
            self.twin
        } else {
            x
        }
    }
}

impl<W: ScaledWeights> ScaledWeights for WithTwin<'_, W> {
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count() + 1
    }
    fn scale(&self) -> i64 {
        self.inner.scale()
    }
    fn scaled(&self, u: usize, v: usize) -> i64 {
        let (a, b) = (self.lift(u), self.lift(v));
        if a == b {
            0
        } else {
            self.inner.scaled(a, b)
        }
    }
}

/// Spanning union of vertex-disjoint paths, each with at least two vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSystem {
    n: usize,
    nbr: Vec<[usize; 2]>,
    /// For a path end, the other end of its path.
    other_end: Vec<usize>,
    /// Ends of all paths, ascending.
    ends: Vec<usize>,
    edges: Vec<Edge>,
}

impl PathSystem {
    pub fn new(n: usize, edges: &[Edge]) -> Result<Self, ExtendError> {
        let mut nbr = vec![[NONE; 2]; n];
        let mut list = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(ExtendError::NotAPathSystem("vertex out of range"));
            }
            if u == v {
                return Err(ExtendError::NotAPathSystem("self-loop"));
            }
            for (x, y) in [(u, v), (v, u)] {
                match nbr[x] {
                    [NONE, _] => nbr[x][0] = y,
                    [a, NONE] if a != y => nbr[x][1] = y,
                    [a, NONE] if a == y => return Err(ExtendError::NotAPathSystem("repeated edge")),
                    _ => return Err(ExtendError::NotAPathSystem("vertex of degree three")),
                }
            }
            list.push(edge(u, v));
        }
        if nbr.iter().any(|p| p[0] == NONE) {
            return Err(ExtendError::NotAPathSystem("uncovered vertex"));
        }
        let mut other_end = vec![NONE; n];
        let mut ends = Vec::new();
        let mut seen = vec![false; n];
        for start in 0..n {
            if nbr[start][1] != NONE || seen[start] {
                continue;
            }
            let (mut prev, mut cur) = (NONE, start);
            loop {
                seen[cur] = true;
                let next = if nbr[cur][0] != prev { nbr[cur][0] } else { nbr[cur][1] };
                if next == NONE {
                    break;
                }
                prev = cur;
                cur = next;
            }
            other_end[start] = cur;
            other_end[cur] = start;
            ends.push(start);
            ends.push(cur);
        }
        if seen.iter().any(|&s| !s) {
            return Err(ExtendError::NotAPathSystem("contains a cycle"));
        }
        ends.sort_unstable();
        list.sort_unstable();
        Ok(PathSystem {
            n,
            nbr,
            other_end,
            ends,
            edges: list,
        })
    }

    /// The path system formed by the edges of an optimal matching of `K_n`,
    /// `n` even.
    pub fn from_matching(m: &Matching) -> Result<Self, ExtendError> {
        if m.vertex_count() % 2 == 1 || !m.is_optimal() {
            return Err(ExtendError::NotOptimal(m.vertex_count()));
        }
        PathSystem::new(m.vertex_count(), m.edges())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn path_count(&self) -> usize {
        self.ends.len() / 2
    }

    /// Edges in ascending order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Ends of all paths, ascending.
    pub fn ends(&self) -> &[usize] {
        &self.ends
    }

    /// The other end of the path ending at `v`, if `v` is a path end.
    pub fn other_end(&self, v: usize) -> Option<usize> {
        (self.other_end[v] != NONE && self.nbr[v][1] == NONE).then_some(self.other_end[v])
    }

    fn is_join(&self, e: Edge) -> bool {
        let (a, b) = e;
        a < self.n
            && b < self.n
            && a != b
            && self.nbr[a][1] == NONE
            && self.nbr[b][1] == NONE
            && self.other_end[a] != b
    }

    /// Pairs of ends of distinct paths, in lexicographic order.
    pub fn join_graph(&self) -> Result<Vec<Edge>, ExtendError> {
        if self.path_count() < 2 {
            return Err(ExtendError::SinglePath);
        }
        let mut out = Vec::with_capacity(2 * self.path_count() * (self.path_count() - 1));
        for (k, &a) in self.ends.iter().enumerate() {
            for &b in &self.ends[k + 1..] {
                if self.other_end[a] != b {
                    out.push((a, b));
                }
            }
        }
        Ok(out)
    }

    fn add_join(&mut self, (a, b): Edge) {
        debug_assert!(self.is_join((a, b)));
        let (ea, eb) = (self.other_end[a], self.other_end[b]);
        self.nbr[a][1] = b;
        self.nbr[b][1] = a;
        self.other_end[ea] = eb;
        self.other_end[eb] = ea;
        self.ends.retain(|&x| x != a && x != b);
        let at = self.edges.partition_point(|&f| f < (a, b));
        self.edges.insert(at, (a, b));
    }

    /// Adds a join edge, merging two paths into one.
    pub fn join(&mut self, e: Edge) -> Result<(), ExtendError> {
        let e = edge(e.0, e.1);
        if !self.is_join(e) {
            return Err(ExtendError::NotInJoinGraph(e));
        }
        self.add_join(e);
        Ok(())
    }

    /// Closes a single Hamilton path into a cycle.
    fn close(&self) -> Result<HamiltonCycle, ExtendError> {
        debug_assert_eq!(self.path_count(), 1);
        let mut edges = self.edges.clone();
        edges.push(edge(self.ends[0], self.ends[1]));
        Ok(HamiltonCycle::from_edges(self.n, &edges)?)
    }

    fn check_size<W: ScaledWeights>(&self, w: &W) -> Result<(), ExtendError> {
        if w.vertex_count() != self.n {
            return Err(ExtendError::DimensionMismatch {
                expected: w.vertex_count(),
                found: self.n,
            });
        }
        Ok(())
    }

    /// Sum of `w(xy)` over ends `y` of paths other than the one ending at `x`,
    /// scaled; indexed like `ends`.
    fn foreign_sums<W: ScaledWeights>(&self, w: &W) -> Vec<i128> {
        self.ends
            .iter()
            .map(|&x| {
                self.ends
                    .iter()
                    .filter(|&&y| y != x && y != self.other_end[x])
                    .map(|&y| w.scaled(x, y) as i128)
                    .sum()
            })
            .collect()
    }

    /// Exact `E(w(H))` for `H` uniform among Hamilton cycles through all
    /// edges, as a scaled numerator over a denominator.
    fn expectation_parts<W: ScaledWeights>(&self, w: &W) -> (i128, i128) {
        let own: i128 = self.edges.iter().map(|&(u, v)| w.scaled(u, v) as i128).sum();
        let i = self.path_count() as i128;
        if i == 1 {
            return (own + w.scaled(self.ends[0], self.ends[1]) as i128, 1);
        }
        let join_sum: i128 = self.foreign_sums(w).iter().sum::<i128>() / 2;
        let den = 2 * (i - 1);
        (den * own + join_sum, den)
    }

    fn expectation<W: ScaledWeights>(&self, w: &W) -> Rational {
        let (num, den) = self.expectation_parts(w);
        Rational::new(num, den * w.scale() as i128)
    }

    /// The join edge with the smallest conditional expectation after adding
    /// it, ties to the lexicographically smallest edge.
    fn best_join<W: ScaledWeights>(&self, w: &W) -> (Edge, Rational) {
        let i = self.path_count();
        debug_assert!(i >= 2);
        let own: i128 = self.edges.iter().map(|&(u, v)| w.scaled(u, v) as i128).sum();
        let sums = self.foreign_sums(w);
        let join_sum: i128 = sums.iter().sum::<i128>() / 2;
        let den: i128 = if i == 2 { 1 } else { 2 * (i as i128 - 2) };
        let mut best: Option<(i128, Edge)> = None;
        for (ka, &a) in self.ends.iter().enumerate() {
            for (kb, &b) in self.ends.iter().enumerate().skip(ka + 1) {
                if self.other_end[a] == b {
                    continue;
                }
                let wab = w.scaled(a, b) as i128;
                let closing = w.scaled(self.other_end[a], self.other_end[b]) as i128;
                let key = if i == 2 {
                    own + wab + closing
                } else {
                    // J after the join loses every pair at a or b and the
                    // pair of the two surviving ends
                    den * (own + wab) + join_sum - sums[ka] - sums[kb] + wab - closing
                };
                if best.is_none_or(|(k, _)| key < k) {
                    best = Some((key, (a, b)));
                }
            }
        }
        let (key, e) = best.expect("at least two paths");
        (e, Rational::new(key, den * w.scale() as i128))
    }
}

/// `E(w(H))` for `H` uniform among Hamilton cycles containing every edge of
/// `ps`; for a single path this is the weight of its closing cycle.
pub fn conditional_expectation(w: &Weighting, ps: &PathSystem) -> Result<Rational, ExtendError> {
    ps.check_size(w)?;
    Ok(ps.expectation(w))
}

/// Edges joining ends of two distinct paths.
pub fn join_graph(ps: &PathSystem) -> Result<Vec<Edge>, ExtendError> {
    ps.join_graph()
}

/// `E(w(H))` after adding the join edge `e`, evaluated from scratch.
pub fn expected_extension_weight(
    w: &Weighting,
    ps: &PathSystem,
    e: Edge,
) -> Result<Rational, ExtendError> {
    ps.check_size(w)?;
    if ps.path_count() < 2 {
        return Err(ExtendError::SinglePath);
    }
    let mut next = ps.clone();
    next.join(e)?;
    Ok(next.expectation(w))
}

/// Join edge minimizing [`expected_extension_weight`], ties to the
/// lexicographically smallest edge, with its expectation.
pub fn pick_best_join(w: &Weighting, ps: &PathSystem) -> Result<(Edge, Rational), ExtendError> {
    ps.check_size(w)?;
    if ps.path_count() < 2 {
        return Err(ExtendError::SinglePath);
    }
    Ok(ps.best_join(w))
}

/// Result of one extension run with its audit trail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    pub cycle: HamiltonCycle,
    /// Conditional expectation before the first join and after each join;
    /// the last entry equals the tour weight. For odd `n` these belong to the
    /// run on `n + 1` vertices.
    pub expectations: Vec<Rational>,
    /// Join edges in the order they were added.
    pub joins: Vec<Edge>,
    pub tour_weight: Rational,
    pub matching_weight: Rational,
    /// `(1 - 1/(n-2)) w(M) + w(K_n)/(n-2) + rho(n)` with `rho(n) = n mod 2`.
    pub bound: Rational,
}

impl Extension {
    pub fn satisfies_bound(&self) -> bool {
        self.tour_weight <= self.bound
    }

    pub fn is_monotone(&self) -> bool {
        self.expectations.windows(2).all(|p| p[1] <= p[0])
    }
}

fn extend_even<W: ScaledWeights>(w: &W, mut ps: PathSystem) -> Result<(HamiltonCycle, Vec<Rational>, Vec<Edge>), ExtendError> {
    let mut expectations = vec![ps.expectation(w)];
    let mut joins = Vec::new();
    while ps.path_count() >= 2 {
        let (e, value) = ps.best_join(w);
        ps.add_join(e);
        debug_assert_eq!(value, ps.expectation(w));
        assert!(
            value <= *expectations.last().unwrap(),
            "conditional expectation increased"
        );
        expectations.push(value);
        joins.push(e);
    }
    Ok((ps.close()?, expectations, joins))
}

pub(crate) fn extend_generic<W: ScaledWeights>(w: &W, m: &Matching) -> Result<Extension, ExtendError> {
    let n = w.vertex_count();
    if m.vertex_count() != n {
        return Err(ExtendError::DimensionMismatch {
            expected: n,
            found: m.vertex_count(),
        });
    }
    if n < 3 {
        return Err(InstanceError::TooFewVertices(n).into());
    }
    if !m.is_optimal() {
        return Err(ExtendError::NotOptimal(n));
    }
    let scale = w.scale() as i128;
    let matching_scaled: i128 = m.edges().iter().map(|&(u, v)| w.scaled(u, v) as i128).sum();

    let (cycle, expectations, joins) = if n.is_multiple_of(2) {
        extend_even(w, PathSystem::from_matching(m)?)?
    } else {
        let twin = m.unmatched()[0];
        let lifted = WithTwin { inner: w, twin };
        let mut edges = m.edges().to_vec();
        edges.push((twin, n));
        let (big, expectations, joins) = extend_even(&lifted, PathSystem::new(n + 1, &edges)?)?;
        // contract the pair {twin, n}: the tour neighbour of n other than
        // twin becomes the neighbour of twin
        let order: Vec<usize> = big.order().iter().copied().filter(|&x| x != n).collect();
        (HamiltonCycle::new(order)?, expectations, joins)
    };

    let tour_scaled: i128 = cycle.edges().map(|(u, v)| w.scaled(u, v) as i128).sum();
    assert_eq!(
        Rational::new(tour_scaled, scale),
        *expectations.last().unwrap(),
        "closing expectation differs from tour weight"
    );
    let nn = n as i128;
    let rho = (n % 2) as i128;
    let bound = Rational::new(
        (nn - 3) * matching_scaled + w.total_scaled() + rho * (nn - 2) * scale,
        (nn - 2) * scale,
    );
    Ok(Extension {
        cycle,
        expectations,
        joins,
        tour_weight: Rational::new(tour_scaled, scale),
        matching_weight: Rational::new(matching_scaled, scale),
        bound,
    })
}

/// Extends an optimal matching of `K_n` to a Hamilton cycle containing it,
/// recording the conditional expectations along the way.
pub fn extend_matching_traced(w: &Weighting, m: &Matching) -> Result<Extension, ExtendError> {
    extend_generic(w, m)
}

/// Extends an optimal matching of `K_n` to a Hamilton cycle containing it.
pub fn extend_matching_to_hamilton(w: &Weighting, m: &Matching) -> Result<HamiltonCycle, ExtendError> {
    Ok(extend_generic(w, m)?.cycle)
}

/// Algorithm A with its audit trail.
pub fn algorithm_a_traced(inst: &Instance01) -> Result<Extension, ExtendError> {
    let m = min_weight_optimal_matching_01(inst);
    extend_generic(inst, &m)
}

/// Minimum-weight optimal matching extended by conditional expectations.
pub fn algorithm_a(inst: &Instance01) -> Result<HamiltonCycle, ExtendError> {
    let ext = algorithm_a_traced(inst)?;
    assert!(ext.satisfies_bound(), "extension bound violated on a 0/1 instance");
    Ok(ext.cycle)
}
