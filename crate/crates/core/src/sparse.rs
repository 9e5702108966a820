//! Algorithm C for instances with very few weight-1 edges.
//!
//! The few vertices with many weight-1 edges form `S`. Each of them is given
//! two partners outside `S` through a maximum double matching of zero-edges
//! (topped up with arbitrary partners), the partner pairs become forced edges
//! of a Hamilton cycle on the rest, and finally every forced edge `x_v y_v`
//! is replaced by the detour `x_v v y_v`.

use thiserror::Error;

use crate::classify::{is_sparse, sparse_threshold};
use crate::graph::{edge, Edge, Graph};
use crate::instance::{rational_to_f64, HamiltonCycle, Instance01, InstanceError};
use crate::matching::{max_double_matching, DoubleMatching};

const NONE: usize = usize::MAX;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SparseError {
    #[error("minimum degree {min_degree} below n/2 + 3k/2 = {required}")]
    DegreeCondition { min_degree: usize, required: f64 },
    #[error("forced edges share vertex {0}")]
    ForcedNotIndependent(usize),
    #[error("forced edge {0:?} is not an edge of the graph")]
    ForcedNotInGraph(Edge),
    #[error("density {d} above the sparse threshold {threshold}")]
    NotSparse { d: f64, threshold: f64 },
    #[error("no common neighbour left to connect forced edges")]
    NoConnector,
    #[error("no extension move applies")]
    Stuck,
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// Vertices whose zero-degree is at most `2n/3`.
pub fn low_degree_set(inst: &Instance01) -> Vec<usize> {
    let n = inst.vertex_count();
    (0..n).filter(|&v| 3 * inst.zero_degree(v) <= 2 * n).collect()
}

/// Whether `|S| <= n^(1/2 - eps)`.
pub fn separator_claim_holds(n: usize, s_size: usize, eps: f64) -> bool {
    s_size as f64 <= (n as f64).powf(0.5 - eps)
}

fn degree_required(n: usize, k: usize) -> f64 {
    n as f64 / 2.0 + 1.5 * k as f64
}

/// State of the rotation-extension search: a path or cycle through all
/// forced edges.
struct Walk<'a> {
    g: &'a Graph,
    partner: Vec<usize>,
    seq: Vec<usize>,
    on: Vec<bool>,
    closed: bool,
}

impl Walk<'_> {
    fn forced(&self, u: usize, v: usize) -> bool {
        self.partner[u] == v
    }

    fn first_outside_neighbor(&self, v: usize) -> Option<usize> {
        self.g.neighbors(v).find(|&c| !self.on[c])
    }

    fn push(&mut self, v: usize) {
        self.on[v] = true;
        self.seq.push(v);
    }

    /// Cycle with an outside neighbour: cut a non-forced cycle edge at `b`
    /// and hang the outside vertex off `b`.
    fn absorb(&mut self) -> bool {
        let len = self.seq.len();
        let mut pos = vec![NONE; self.on.len()];
        for (i, &v) in self.seq.iter().enumerate() {
            pos[v] = i;
        }
        for c in 0..self.on.len() {
            if self.on[c] {
                continue;
            }
            let Some(b) = self.g.neighbors(c).find(|&b| self.on[b]) else {
                continue;
            };
            let i = pos[b];
            let (before, after) = (self.seq[(i + len - 1) % len], self.seq[(i + 1) % len]);
            let cut_before = match (self.forced(before, b), self.forced(after, b)) {
                (false, false) => edge(before, b) < edge(after, b),
                (false, true) => true,
                (true, false) => false,
                (true, true) => unreachable!("forced edges are independent"),
            };
            // new path runs from the far side of the cut edge around to b
            let mut next = Vec::with_capacity(len + 1);
            if cut_before {
                // before ... b: start at `before`, walk backwards to b
                for k in 0..len {
                    next.push(self.seq[(i + len - 1 - k) % len]);
                }
            } else {
                for k in 0..len {
                    next.push(self.seq[(i + 1 + k) % len]);
                }
            }
            debug_assert_eq!(*next.last().unwrap(), b);
            self.seq = next;
            self.closed = false;
            self.push(c);
            return true;
        }
        false
    }

    fn extend(&mut self) -> bool {
        let tail = *self.seq.last().unwrap();
        if let Some(c) = self.first_outside_neighbor(tail) {
            self.push(c);
            return true;
        }
        let head = self.seq[0];
        if let Some(c) = self.first_outside_neighbor(head) {
            self.seq.reverse();
            self.push(c);
            return true;
        }
        false
    }

    /// Path whose ends have all neighbours on it: find consecutive `x, x+`
    /// with `head ~ x+`, `x ~ tail` and `x x+` not forced, and close.
    fn rotate(&mut self) -> bool {
        let last = self.seq.len() - 1;
        let (head, tail) = (self.seq[0], self.seq[last]);
        for j in 0..last {
            let (x, xp) = (self.seq[j], self.seq[j + 1]);
            if self.g.has_edge(head, xp) && self.g.has_edge(x, tail) && !self.forced(x, xp) {
                self.seq[j + 1..].reverse();
                self.closed = true;
                return true;
            }
        }
        false
    }
}

/// Hamilton cycle of `g` through every edge in `forced`, for graphs with
/// minimum degree at least `n/2 + 3k/2`.
pub fn dirac_hamilton_forced(g: &Graph, forced: &[Edge]) -> Result<HamiltonCycle, SparseError> {
    let n = g.vertex_count();
    if n < 3 {
        return Err(InstanceError::TooFewVertices(n).into());
    }
    let k = forced.len();
    let delta = g.min_degree();
    if 2 * delta < n + 3 * k {
        return Err(SparseError::DegreeCondition {
            min_degree: delta,
            required: degree_required(n, k),
        });
    }
    let mut partner = vec![NONE; n];
    for &(u, v) in forced {
        if !g.has_edge(u, v) {
            return Err(SparseError::ForcedNotInGraph(edge(u, v)));
        }
        for x in [u, v] {
            if partner[x] != NONE {
                return Err(SparseError::ForcedNotIndependent(x));
            }
        }
        partner[u] = v;
        partner[v] = u;
    }
    let mut walk = Walk {
        g,
        partner,
        seq: Vec::with_capacity(n),
        on: vec![false; n],
        closed: false,
    };
    if forced.is_empty() {
        walk.push(0);
    } else {
        let mut reserved = vec![false; n];
        for &(u, v) in forced {
            reserved[u] = true;
            reserved[v] = true;
        }
        for (i, &(u, v)) in forced.iter().enumerate() {
            let (x, y) = edge(u, v);
            if i > 0 {
                let prev = *walk.seq.last().unwrap();
                let z = g
                    .neighbors(prev)
                    .find(|&z| !reserved[z] && g.has_edge(z, x))
                    .ok_or(SparseError::NoConnector)?;
                reserved[z] = true;
                walk.push(z);
            }
            walk.push(x);
            walk.push(y);
        }
    }

    // |V(Q)| + e(Q) grows by at least one per phase and is at most 2n
    let progress = |w: &Walk| w.seq.len() + w.seq.len() - 1 + w.closed as usize;
    let mut phases = 0;
    while !(walk.closed && walk.seq.len() == n) {
        let before = progress(&walk);
        let moved = if walk.closed {
            walk.absorb()
        } else {
            walk.extend() || walk.rotate()
        };
        if !moved {
            return Err(SparseError::Stuck);
        }
        assert!(progress(&walk) > before);
        phases += 1;
        assert!(phases <= 2 * n, "too many extension phases");
    }
    let cycle = HamiltonCycle::new(walk.seq)?;
    debug_assert!(forced.iter().all(|&(u, v)| cycle.contains_edge(u, v)));
    Ok(cycle)
}

/// Output of Algorithm C.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseOutcome {
    pub cycle: HamiltonCycle,
    pub s_set: Vec<usize>,
    /// Maximum double matching of zero-edges from `S` to the rest.
    pub double_matching: DoubleMatching,
    /// Its completion in which every vertex of `S` has two partners.
    pub completed: DoubleMatching,
    /// `(v, x_v y_v)` for every `v` in `S`.
    pub forced: Vec<(usize, Edge)>,
    /// `|S|` exceeds `n^(1/2 - eps)` although the sparse condition holds.
    pub separator_warning: bool,
}

fn run(inst: &Instance01, eps: f64) -> Result<SparseOutcome, SparseError> {
    let n = inst.vertex_count();
    let g = inst.zero_graph();
    let s_set = low_degree_set(inst);
    let mut in_s = vec![false; n];
    for &v in &s_set {
        in_s[v] = true;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| !in_s[v]).collect();
    let rest_graph = g.induced(&rest);
    let k = s_set.len();
    let delta = if rest.is_empty() { 0 } else { rest_graph.min_degree() };
    if rest.len() < 3 || 2 * delta < rest.len() + 3 * k {
        return Err(SparseError::DegreeCondition {
            min_degree: delta,
            required: degree_required(rest.len(), k),
        });
    }

    let dm = max_double_matching(&g, &s_set, &rest).expect("sides are disjoint");
    let mut completed = dm.clone();
    let mut used = vec![false; n];
    for &(_, b) in dm.pairs() {
        used[b] = true;
    }
    let mut spare = rest.iter().copied().filter(|&b| !used[b]);
    for &v in &s_set {
        for _ in dm.partners(v).len()..2 {
            let b = spare.next().expect("at least 3|S| vertices outside S");
            completed.push(v, b);
        }
    }

    let mut index = vec![NONE; n];
    for (i, &v) in rest.iter().enumerate() {
        index[v] = i;
    }
    let mut h = rest_graph;
    let mut forced = Vec::with_capacity(k);
    let mut forced_local = Vec::with_capacity(k);
    for &v in &s_set {
        let p = completed.partners(v);
        let e = edge(p[0], p[1]);
        forced.push((v, e));
        h.add_edge(index[e.0], index[e.1]);
        forced_local.push((index[e.0], index[e.1]));
    }
    let inner = dirac_hamilton_forced(&h, &forced_local)?;

    let mut edges: Vec<Edge> = inner
        .edges()
        .map(|(a, b)| edge(rest[a], rest[b]))
        .collect();
    edges.retain(|e| !forced.iter().any(|(_, f)| f == e));
    for &(v, (x, y)) in &forced {
        edges.push((v, x));
        edges.push((v, y));
    }
    let cycle = HamiltonCycle::from_edges(n, &edges)?;
    let d = rational_to_f64(&inst.density());
    Ok(SparseOutcome {
        cycle,
        separator_warning: is_sparse(n, d, eps) && !separator_claim_holds(n, k, eps),
        s_set,
        double_matching: dm,
        completed,
        forced,
    })
}

/// Algorithm C. Requires the sparse condition and the degree bound
/// `delta(G[rest]) >= |rest|/2 + 3|S|/2` on the zero-graph.
pub fn algorithm_c(inst: &Instance01, eps: f64) -> Result<SparseOutcome, SparseError> {
    let n = inst.vertex_count();
    let d = rational_to_f64(&inst.density());
    if !is_sparse(n, d, eps) {
        return Err(SparseError::NotSparse {
            d,
            threshold: sparse_threshold(n, eps),
        });
    }
    run(inst, eps)
}

/// Algorithm C without the density condition; only the degree bound is
/// required.
pub fn algorithm_c_structural(inst: &Instance01) -> Result<SparseOutcome, SparseError> {
    run(inst, crate::classify::DEFAULT_EPS)
}
