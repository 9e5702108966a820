//! Maximum double matching by Hopcroft–Karp on the graph where every vertex
//! of the capacity-2 side is split into two copies.

use std::collections::VecDeque;

use super::{DoubleMatching, MatchingError};
use crate::graph::Graph;

const NONE: usize = usize::MAX;

fn check_sides(n: usize, a_side: &[usize], b_side: &[usize]) -> Result<(), MatchingError> {
    let mut side = vec![0u8; n];
    for (tag, list) in [(1u8, a_side), (2u8, b_side)] {
        for &v in list {
            if v >= n {
                return Err(MatchingError::VertexOutOfRange { vertex: v, n });
            }
            if side[v] != 0 {
                return Err(MatchingError::SidesOverlap(v));
            }
            side[v] = tag;
        }
    }
    Ok(())
}

/// Edges of `g` with one end in `a_side` and the other in `b_side`. Panics if
/// the sides overlap or hold an out-of-range vertex.
pub fn bipartite_subgraph(g: &Graph, a_side: &[usize], b_side: &[usize]) -> Graph {
    check_sides(g.vertex_count(), a_side, b_side).expect("valid sides");
    let mut in_b = vec![false; g.vertex_count()];
    for &b in b_side {
        in_b[b] = true;
    }
    let mut h = Graph::new(g.vertex_count());
    for &a in a_side {
        for v in g.neighbors(a) {
            if in_b[v] {
                h.add_edge(a, v);
            }
        }
    }
    h
}

struct HopcroftKarp<'a> {
    adj: &'a [Vec<usize>],
    left_mate: Vec<usize>,
    right_mate: Vec<usize>,
    dist: Vec<usize>,
}

impl HopcroftKarp<'_> {
    fn layer(&mut self) -> bool {
        let mut queue = VecDeque::new();
        for (l, d) in self.dist.iter_mut().enumerate() {
            if self.left_mate[l] == NONE {
                *d = 0;
                queue.push_back(l);
            } else {
                *d = NONE;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &self.adj[l] {
                let next = self.right_mate[r];
                if next == NONE {
                    found = true;
                } else if self.dist[next] == NONE {
                    self.dist[next] = self.dist[l] + 1;
                    queue.push_back(next);
                }
            }
        }
        found
    }

    fn augment(&mut self, l: usize) -> bool {
        for i in 0..self.adj[l].len() {
            let r = self.adj[l][i];
            let next = self.right_mate[r];
            if next == NONE || (self.dist[next] == self.dist[l] + 1 && self.augment(next)) {
                self.left_mate[l] = r;
                self.right_mate[r] = l;
                return true;
            }
        }
        self.dist[l] = NONE;
        false
    }
}

/// Maximum subgraph of `g` between `a_side` and `b_side` in which every
/// `a_side` vertex has degree at most 2 and every `b_side` vertex degree at
/// most 1. Edges of `g` inside either side are ignored.
pub fn max_double_matching(
    g: &Graph,
    a_side: &[usize],
    b_side: &[usize],
) -> Result<DoubleMatching, MatchingError> {
    let n = g.vertex_count();
    check_sides(n, a_side, b_side)?;
    let mut b_index = vec![NONE; n];
    for (i, &b) in b_side.iter().enumerate() {
        b_index[b] = i;
    }
    // left vertex 2i and 2i+1 are the two copies of a_side[i]
    let mut adj = Vec::with_capacity(2 * a_side.len());
    for &a in a_side {
        let row: Vec<usize> = g
            .neighbors(a)
            .filter_map(|v| (b_index[v] != NONE).then_some(b_index[v]))
            .collect();
        adj.push(row.clone());
        adj.push(row);
    }
    let mut hk = HopcroftKarp {
        adj: &adj,
        left_mate: vec![NONE; adj.len()],
        right_mate: vec![NONE; b_side.len()],
        dist: vec![NONE; adj.len()],
    };
    while hk.layer() {
        for l in 0..adj.len() {
            if hk.left_mate[l] == NONE {
                hk.augment(l);
            }
        }
    }
    let pairs = hk
        .left_mate
        .iter()
        .enumerate()
        .filter(|&(_, &r)| r != NONE)
        .map(|(l, &r)| (a_side[l / 2], b_side[r]))
        .collect();
    Ok(DoubleMatching::from_parts(a_side.to_vec(), b_side.to_vec(), pairs))
}
