//! Edmonds' blossom algorithm for maximum-cardinality matching.
//!
//! One alternating-tree search per exposed vertex, contracting odd cycles by
//! relabelling their vertices with a common base. A vertex whose search fails
//! stays exposed in every later matching, so each vertex is tried once and the
//! whole run is `O(n^3)`.

use std::collections::VecDeque;

use super::Matching;
use crate::graph::Graph;

const NONE: usize = usize::MAX;

struct Search {
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    in_tree: Vec<bool>,
    in_blossom: Vec<bool>,
    on_path: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Search {
    fn new(mate: Vec<usize>) -> Self {
        let n = mate.len();
        Search {
            mate,
            parent: vec![NONE; n],
            base: (0..n).collect(),
            in_tree: vec![false; n],
            in_blossom: vec![false; n],
            on_path: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lowest_common_base(&mut self, mut a: usize, mut b: usize) -> usize {
        self.on_path.fill(false);
        loop {
            a = self.base[a];
            self.on_path[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if self.on_path[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            let m = self.mate[v];
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[m]] = true;
            self.parent[v] = child;
            child = m;
            v = self.parent[m];
        }
    }

    /// Grows an alternating tree from `root`; returns the exposed vertex that
    /// ends an augmenting path, if any.
    fn find_augmenting_path(&mut self, g: &Graph, root: usize) -> Option<usize> {
        let n = self.mate.len();
        self.in_tree.fill(false);
        self.parent.fill(NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.in_tree[root] = true;
        self.queue.push_back(root);

        while let Some(v) = self.queue.pop_front() {
            for to in g.neighbors(v) {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lowest_common_base(v, to);
                    self.in_blossom.fill(false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.in_tree[i] {
                                self.in_tree[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.in_tree[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }
}

/// Maximum-cardinality matching of a general graph.
///
/// Starts from the greedy matching that pairs each vertex with its smallest
/// free neighbour, then augments from exposed vertices in ascending order, so
/// the output is a deterministic function of the graph.
pub fn max_matching(g: &Graph) -> Matching {
    let n = g.vertex_count();
    let mut mate = vec![NONE; n];
    for u in 0..n {
        if mate[u] == NONE {
            if let Some(v) = g.neighbors(u).find(|&v| mate[v] == NONE) {
                mate[u] = v;
                mate[v] = u;
            }
        }
    }
    let mut search = Search::new(mate);
    for root in 0..n {
        if search.mate[root] == NONE {
            if let Some(end) = search.find_augmenting_path(g, root) {
                search.augment(end);
            }
        }
    }
    Matching::from_mates(&search.mate)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(10, edges)
    }

    #[test]
    fn small_examples() {
        assert_eq!(max_matching(&Graph::new(5)).len(), 0);
        let k4 = max_matching(&Graph::complete(4));
        assert_eq!(k4.len(), 2);
        assert!(k4.is_subgraph_of(&Graph::complete(4)));
        assert_eq!(max_matching(&Graph::complete(3)).len(), 1);
        let c5 = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5)));
        assert_eq!(max_matching(&c5).len(), 2);
        let p = petersen();
        let m = max_matching(&p);
        assert_eq!(m.len(), 5);
        assert!(m.is_subgraph_of(&p));
    }

    #[test]
    fn needs_blossom_contraction() {
        // triangle 0-1-2 with pendant paths; greedy matches 0-1 and blocks 2
        // until the blossom through 0-1-2 is shrunk
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (2, 3), (0, 4), (1, 5)]);
        assert_eq!(max_matching(&g).len(), 3);
    }

    #[test]
    fn zero_and_one_vertex() {
        assert_eq!(max_matching(&Graph::new(0)).len(), 0);
        assert_eq!(max_matching(&Graph::new(1)).len(), 0);
    }
}
