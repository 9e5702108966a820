//! Algorithm B for instances whose zero-graph is sparse and has no matching
//! much larger than average: a small vertex cover `D` of the zero-graph, a
//! maximum double matching from `D` into the rest, and any Hamilton cycle
//! through that double matching.

use thiserror::Error;

use crate::classify::dense_check;
use crate::graph::{binom2, Edge, Graph};
use crate::instance::{rational_to_f64, HamiltonCycle, Instance01, InstanceError};
use crate::matching::{max_double_matching, max_matching, min_matching_weight_01, DoubleMatching, Matching};

/// Degree multiplier used by Algorithm B.
pub const DEFAULT_S: usize = 3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DenseError {
    #[error("multiplier s = {0} must be at least 2")]
    MultiplierTooSmall(usize),
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("edge density {density} exceeds 1/(4s) = {max}")]
    DensityTooLarge { density: f64, max: f64 },
    #[error("slack r = {r} must satisfy 1 <= r < n/(8s) = {max}")]
    SlackOutOfRange { r: usize, max: f64 },
    #[error("largest matching has {size} edges, more than {max}")]
    MatchingTooLarge { size: usize, max: f64 },
    #[error("cover has {size} vertices, above the bound {bound}")]
    CoverTooLarge { size: usize, bound: f64 },
    #[error("low-degree part has {size} vertices, above the bound {bound}")]
    LowDegreePartTooLarge { size: usize, bound: f64 },
    #[error("instance is not dense for eps = {eps}")]
    NotDense { eps: f64 },
    #[error("edges do not form vertex-disjoint paths: {0}")]
    NotPaths(&'static str),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// The sets built while covering a graph from a maximum matching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverDecomposition {
    pub s_param: usize,
    pub matching: Matching,
    /// Vertices covered by the matching.
    pub u_set: Vec<usize>,
    /// Covered vertices of degree at most `2 s m`.
    pub a_set: Vec<usize>,
    pub b_set: Vec<usize>,
    /// Matching partners in `A` of vertices in `B`.
    pub c_set: Vec<usize>,
    /// The vertex cover `U \ C`.
    pub d_set: Vec<usize>,
    /// Cover vertices of degree at most `s |D|`.
    pub s_set: Vec<usize>,
}

impl CoverDecomposition {
    pub fn is_vertex_cover_of(&self, g: &Graph) -> bool {
        let mut inside = vec![false; g.vertex_count()];
        for &v in &self.d_set {
            inside[v] = true;
        }
        g.edges().all(|(u, v)| inside[u] || inside[v])
    }
}

fn membership(n: usize, set: &[usize]) -> Vec<bool> {
    let mut out = vec![false; n];
    for &v in set {
        out[v] = true;
    }
    out
}

/// Builds `U, A, B, C, D, S` from a maximum matching of `g`, checking the three
/// exchange claims that make `D` a vertex cover. Panics if a claim fails,
/// which can only mean the matching was not maximum.
pub fn build_cover(g: &Graph, s: usize) -> Result<CoverDecomposition, DenseError> {
    if s < 2 {
        return Err(DenseError::MultiplierTooSmall(s));
    }
    let n = g.vertex_count();
    let matching = max_matching(g);
    let mate = matching.mates();
    let m = matching.len();
    let u_set: Vec<usize> = (0..n).filter(|&v| mate[v].is_some()).collect();
    let (a_set, b_set): (Vec<usize>, Vec<usize>) =
        u_set.iter().partition(|&&u| g.degree(u) <= 2 * s * m);
    let in_b = membership(n, &b_set);

    for &(x, y) in matching.edges() {
        assert!(!(in_b[x] && in_b[y]), "matching edge {x}-{y} inside B");
    }
    let c_set: Vec<usize> = a_set
        .iter()
        .copied()
        .filter(|&u| in_b[mate[u].unwrap()])
        .collect();
    let in_u = membership(n, &u_set);
    let in_c = membership(n, &c_set);
    for &c in &c_set {
        for v in g.neighbors(c) {
            assert!(in_u[v], "edge {c}-{v} from C leaves U");
            assert!(!in_c[v], "edge {c}-{v} inside C");
        }
    }
    let d_set: Vec<usize> = u_set.iter().copied().filter(|&u| !in_c[u]).collect();
    let s_set: Vec<usize> = d_set
        .iter()
        .copied()
        .filter(|&v| g.degree(v) <= s * d_set.len())
        .collect();
    let out = CoverDecomposition {
        s_param: s,
        matching,
        u_set,
        a_set,
        b_set,
        c_set,
        d_set,
        s_set,
    };
    assert!(out.is_vertex_cover_of(g), "D is not a vertex cover");
    Ok(out)
}

/// `(cover bound, low-degree bound)` for edge density `dbar` and slack `r`.
pub fn cover_bounds(n: usize, dbar: f64, s: usize, r: f64) -> (f64, f64) {
    let (nf, sf) = (n as f64, s as f64);
    (
        0.5 * dbar * (nf + 2.0) + sf * dbar * dbar * (nf + 1.0) + (7.0 * sf + 2.0) * r,
        2.0 * sf * dbar * dbar * (nf + 1.0) + (14.0 * sf + 4.0) * r + 3.0 * dbar,
    )
}

/// The vertex cover of a graph with edge density in `(0, 1/(4s)]` whose
/// largest matching has at most `dbar n / 2 + r` edges, with `1 <= r <
/// n/(8s)`. Both size bounds on `D` and `S` are verified.
pub fn lemma_vertex_cover(g: &Graph, s: usize, r: usize) -> Result<CoverDecomposition, DenseError> {
    if s < 2 {
        return Err(DenseError::MultiplierTooSmall(s));
    }
    let n = g.vertex_count();
    let e = g.edge_count();
    if e == 0 {
        return Err(DenseError::EmptyGraph);
    }
    let pairs = binom2(n);
    let dbar = e as f64 / pairs as f64;
    if 4 * s * e > pairs {
        return Err(DenseError::DensityTooLarge {
            density: dbar,
            max: 1.0 / (4 * s) as f64,
        });
    }
    if r == 0 || 8 * s * r >= n {
        return Err(DenseError::SlackOutOfRange {
            r,
            max: n as f64 / (8 * s) as f64,
        });
    }
    let nu = g_matching_size(g);
    // nu <= e n / (2 C(n,2)) + r, cleared of denominators
    if 2 * pairs * nu > e * n + 2 * pairs * r {
        return Err(DenseError::MatchingTooLarge {
            size: nu,
            max: dbar * n as f64 / 2.0 + r as f64,
        });
    }
    let cover = build_cover(g, s)?;
    let (d_bound, s_bound) = cover_bounds(n, dbar, s, r as f64);
    if cover.d_set.len() as f64 > d_bound + 1e-9 {
        return Err(DenseError::CoverTooLarge {
            size: cover.d_set.len(),
            bound: d_bound,
        });
    }
    if cover.s_set.len() as f64 > s_bound + 1e-9 {
        return Err(DenseError::LowDegreePartTooLarge {
            size: cover.s_set.len(),
            bound: s_bound,
        });
    }
    Ok(cover)
}

fn g_matching_size(g: &Graph) -> usize {
    max_matching(g).len()
}

/// Hamilton cycle of `K_n` through every edge of a collection of disjoint
/// paths. Each path (isolated vertices included) is read from its smaller
/// end; paths are concatenated in order of their smaller ends and the result
/// is closed.
pub fn extend_paths_to_hamilton(n: usize, path_edges: &[Edge]) -> Result<HamiltonCycle, DenseError> {
    if n < 3 {
        return Err(InstanceError::TooFewVertices(n).into());
    }
    let mut adj = vec![Vec::with_capacity(2); n];
    for &(u, v) in path_edges {
        if u >= n || v >= n {
            return Err(InstanceError::VertexOutOfRange { vertex: u.max(v), n }.into());
        }
        if u == v || adj[u].contains(&v) {
            return Err(DenseError::NotPaths("loop or repeated edge"));
        }
        adj[u].push(v);
        adj[v].push(u);
        if adj[u].len() > 2 || adj[v].len() > 2 {
            return Err(DenseError::NotPaths("vertex of degree three"));
        }
    }
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    // ascending scan meets every path first at its smaller end
    for start in 0..n {
        if seen[start] || adj[start].len() == 2 {
            continue;
        }
        let (mut prev, mut cur) = (usize::MAX, start);
        loop {
            seen[cur] = true;
            order.push(cur);
            match adj[cur].iter().find(|&&x| x != prev) {
                Some(&next) => {
                    prev = cur;
                    cur = next;
                }
                None => break,
            }
        }
    }
    if order.len() != n {
        return Err(DenseError::NotPaths("contains a cycle"));
    }
    Ok(HamiltonCycle::new(order)?)
}

/// Output of Algorithm B.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOutcome {
    pub cycle: HamiltonCycle,
    pub cover: CoverDecomposition,
    pub double_matching: DoubleMatching,
    /// Why the preconditions of the guarantee failed, if they did. The tour
    /// is still valid but carries no certificate.
    pub precondition_failure: Option<DenseError>,
}

impl DenseOutcome {
    pub fn certified(&self) -> bool {
        self.precondition_failure.is_none()
    }

    /// Whether every vertex of `D \ S` has two partners in the double
    /// matching.
    pub fn high_degree_saturated(&self) -> bool {
        let in_s = membership(self.cycle.len(), &self.cover.s_set);
        self.cover
            .d_set
            .iter()
            .filter(|&&v| !in_s[v])
            .all(|&v| self.double_matching.partners(v).len() == 2)
    }
}

fn run_from_cover(
    n: usize,
    g: &Graph,
    cover: CoverDecomposition,
    precondition_failure: Option<DenseError>,
) -> Result<DenseOutcome, DenseError> {
    let in_d = membership(n, &cover.d_set);
    let rest: Vec<usize> = (0..n).filter(|&v| !in_d[v]).collect();
    let dm = max_double_matching(g, &cover.d_set, &rest).expect("sides are disjoint");
    let edges: Vec<Edge> = dm.edges().collect();
    let cycle = extend_paths_to_hamilton(n, &edges)?;
    let out = DenseOutcome {
        cycle,
        cover,
        double_matching: dm,
        precondition_failure,
    };
    if out.cover.s_param >= 3 {
        assert!(out.high_degree_saturated(), "high-degree cover vertex not saturated");
    }
    Ok(out)
}

/// Algorithm B with slack `r` of the dense definition. When the dense
/// conditions or the cover hypotheses fail, the construction still runs on
/// the cover of any maximum matching and the failure is recorded.
pub fn algorithm_b(inst: &Instance01, r: f64, eps: f64) -> Result<DenseOutcome, DenseError> {
    let n = inst.vertex_count();
    let g = inst.zero_graph();
    let d = rational_to_f64(&inst.density());
    let check = dense_check(n, d, min_matching_weight_01(inst), eps);
    let lemma = if check.all() {
        lemma_vertex_cover(&g, DEFAULT_S, r.ceil().max(1.0) as usize)
    } else {
        Err(DenseError::NotDense { eps })
    };
    match lemma {
        Ok(cover) => run_from_cover(n, &g, cover, None),
        Err(failure) => run_from_cover(n, &g, build_cover(&g, DEFAULT_S)?, Some(failure)),
    }
}

/// Algorithm B on the cover of a maximum matching with multiplier `s`,
/// without checking any density or size hypotheses. The tour dominates
/// every tour that avoids edges inside `S` and meets `S` at most once per
/// outside vertex, whatever the sizes.
pub fn algorithm_b_structural(inst: &Instance01, s: usize) -> Result<DenseOutcome, DenseError> {
    let g = inst.zero_graph();
    let cover = build_cover(&g, s)?;
    run_from_cover(inst.vertex_count(), &g, cover, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star_zero_graph(n: usize, t: usize) -> Graph {
        Graph::from_edges(n, (1..=t).map(|v| (0, v)))
    }

    #[test]
    fn star_cover() {
        let g = star_zero_graph(50, 5);
        let cover = lemma_vertex_cover(&g, 3, 1).unwrap();
        assert!(cover.is_vertex_cover_of(&g));
        assert!(cover.d_set.contains(&0));
        assert_eq!(cover.matching.len(), 1);
        assert!(cover.b_set.is_empty() && cover.c_set.is_empty());
    }

    #[test]
    fn hypothesis_failures() {
        assert_eq!(lemma_vertex_cover(&Graph::new(10), 3, 1).unwrap_err(), DenseError::EmptyGraph);
        let pm = Graph::from_edges(100, (0..50).map(|k| (2 * k, 2 * k + 1)));
        assert!(matches!(
            lemma_vertex_cover(&pm, 3, 2).unwrap_err(),
            DenseError::MatchingTooLarge { size: 50, .. }
        ));
        let g = star_zero_graph(50, 5);
        assert!(matches!(lemma_vertex_cover(&g, 3, 3).unwrap_err(), DenseError::SlackOutOfRange { .. }));
        assert!(matches!(lemma_vertex_cover(&g, 1, 1).unwrap_err(), DenseError::MultiplierTooSmall(1)));
        assert!(matches!(
            lemma_vertex_cover(&Graph::complete(10), 3, 1).unwrap_err(),
            DenseError::DensityTooLarge { .. }
        ));
    }

    #[test]
    fn cover_with_nonempty_c() {
        // hub 0 matched to leaf 1; vertex 1 is low degree, 0 is high degree,
        // so 1 lands in C and drops out of D
        let n = 40;
        let mut g = Graph::new(n);
        for v in 1..n {
            g.add_edge(0, v);
        }
        let cover = build_cover(&g, 2).unwrap();
        assert_eq!(cover.matching.len(), 1);
        assert_eq!(cover.b_set, vec![0]);
        assert_eq!(cover.c_set, vec![1]);
        assert_eq!(cover.d_set, vec![0]);
        assert!(cover.s_set.is_empty());
    }

    #[test]
    fn extension_examples() {
        let h = extend_paths_to_hamilton(5, &[]).unwrap();
        assert_eq!(h.order(), &[0, 1, 2, 3, 4]);
        let h = extend_paths_to_hamilton(4, &[(0, 1), (1, 2)]).unwrap();
        assert!(h.contains_edge(0, 1) && h.contains_edge(1, 2));
        let h = extend_paths_to_hamilton(6, &[(0, 1), (2, 3)]).unwrap();
        assert!(h.contains_edge(0, 1) && h.contains_edge(2, 3));
        let h = extend_paths_to_hamilton(6, &[(5, 2), (2, 0)]).unwrap();
        assert!(h.contains_edge(5, 2) && h.contains_edge(0, 2));
        assert!(extend_paths_to_hamilton(4, &[(0, 1), (1, 2), (2, 0)]).is_err());
        assert!(extend_paths_to_hamilton(4, &[(0, 1), (0, 2), (0, 3)]).is_err());
    }

    #[test]
    fn hub_vertices_take_two_zero_edges() {
        let n = 40;
        let mut g = Graph::new(n);
        for hub in 0..2 {
            for v in 0..n {
                if v != hub {
                    g.add_edge(hub, v);
                }
            }
        }
        let inst = Instance01::from_zero_graph(&g).unwrap();
        let out = algorithm_b_structural(&inst, 3).unwrap();
        for hub in 0..2 {
            assert!(out.cover.d_set.contains(&hub));
            assert!(!out.cover.s_set.contains(&hub));
            let zero_out = out
                .cycle
                .neighbor_table()[hub]
                .iter()
                .filter(|&&x| !out.cover.d_set.contains(&x) && g.has_edge(hub, x))
                .count();
            assert_eq!(zero_out, 2);
        }
        assert_eq!(inst.tour_weight(&out.cycle).unwrap(), n - 4);
    }

    #[test]
    fn all_ones_falls_back() {
        let inst = Instance01::all_ones(12).unwrap();
        let out = algorithm_b(&inst, 1.0, 1.0 / 28.0).unwrap();
        assert!(!out.certified());
        assert_eq!(inst.tour_weight(&out.cycle).unwrap(), 12);
    }
}
