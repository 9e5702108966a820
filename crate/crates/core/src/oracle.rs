//! Exhaustive reference implementations for small inputs, used to check the
//! polynomial algorithms in tests.

use thiserror::Error;

use crate::graph::{Edge, Graph};
use crate::instance::{HamiltonCycle, Instance01, Weighting};
use crate::matching::Matching;
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("n = {n} exceeds the exhaustive-search limit {max}")]
pub struct TooLarge {
    pub n: usize,
    pub max: usize,
}

fn guard(n: usize, max: usize) -> Result<(), TooLarge> {
    if n > max {
        Err(TooLarge { n, max })
    } else {
        Ok(())
    }
}

/// Maximum matching by branching on the smallest unmatched vertex.
pub fn brute_force_max_matching(g: &Graph) -> Result<Matching, TooLarge> {
    let n = g.vertex_count();
    guard(n, 16)?;
    fn go(g: &Graph, used: u32, cur: &mut Vec<Edge>, best: &mut Vec<Edge>) {
        let n = g.vertex_count();
        let Some(u) = (0..n).find(|&u| used & (1 << u) == 0) else {
            if cur.len() > best.len() {
                *best = cur.clone();
            }
            return;
        };
        // remaining vertices can add at most half their count
        let free = n - used.count_ones() as usize;
        if cur.len() + free / 2 <= best.len() {
            return;
        }
        for v in g.neighbors(u) {
            if used & (1 << v) == 0 {
                cur.push((u, v));
                go(g, used | 1 << u | 1 << v, cur, best);
                cur.pop();
            }
        }
        go(g, used | 1 << u, cur, best);
    }
    let mut best = Vec::new();
    go(g, 0, &mut Vec::new(), &mut best);
    Ok(Matching::new(n, best).expect("disjoint by construction"))
}

/// Size of a maximum double matching from `a_side` (capacity 2) to `b_side`
/// (capacity 1), by trying every choice of at most two partners per
/// `a_side` vertex.
pub fn brute_force_max_double_matching(
    g: &Graph,
    a_side: &[usize],
    b_side: &[usize],
) -> Result<usize, TooLarge> {
    guard(a_side.len() + b_side.len(), 12)?;
    let mut in_b = vec![false; g.vertex_count()];
    for &b in b_side {
        in_b[b] = true;
    }
    fn go(g: &Graph, a_side: &[usize], in_b: &[bool], taken: &mut Vec<bool>, k: usize) -> usize {
        let Some(&a) = a_side.get(k) else { return 0 };
        let cand: Vec<usize> = g.neighbors(a).filter(|&v| in_b[v] && !taken[v]).collect();
        let mut best = go(g, a_side, in_b, taken, k + 1);
        for (i, &x) in cand.iter().enumerate() {
            taken[x] = true;
            best = best.max(1 + go(g, a_side, in_b, taken, k + 1));
            for &y in &cand[i + 1..] {
                taken[y] = true;
                best = best.max(2 + go(g, a_side, in_b, taken, k + 1));
                taken[y] = false;
            }
            taken[x] = false;
        }
        best
    }
    Ok(go(g, a_side, &in_b, &mut vec![false; g.vertex_count()], 0))
}

/// Minimum number of weight-1 edges over all optimal matchings of `K_n`.
pub fn brute_force_min_optimal_matching_weight(inst: &Instance01) -> Result<usize, TooLarge> {
    let n = inst.vertex_count();
    guard(n, 12)?;
    fn go(inst: &Instance01, used: u32, skip_left: bool) -> usize {
        let n = inst.vertex_count();
        let Some(u) = (0..n).find(|&u| used & (1 << u) == 0) else { return 0 };
        let mut best = usize::MAX;
        if skip_left {
            best = go(inst, used | 1 << u, false);
        }
        for v in u + 1..n {
            if used & (1 << v) == 0 {
                let rest = go(inst, used | 1 << u | 1 << v, skip_left);
                if rest != usize::MAX {
                    best = best.min(inst.weight(u, v) as usize + rest);
                }
            }
        }
        best
    }
    Ok(go(inst, 0, n % 2 == 1))
}

/// Calls `f` once for every Hamilton cycle of `K_n`, given as a vertex order
/// starting at 0 with second vertex smaller than the last.
pub fn for_each_hamilton_cycle<F: FnMut(&[usize])>(n: usize, mut f: F) -> Result<(), TooLarge> {
    guard(n, 12)?;
    if n < 3 {
        return Ok(());
    }
    fn go<F: FnMut(&[usize])>(n: usize, order: &mut Vec<usize>, used: &mut [bool], f: &mut F) {
        if order.len() == n {
            if order[1] < order[n - 1] {
                f(order);
            }
            return;
        }
        for v in 1..n {
            if !used[v] {
                used[v] = true;
                order.push(v);
                go(n, order, used, f);
                order.pop();
                used[v] = false;
            }
        }
    }
    let mut used = vec![false; n];
    used[0] = true;
    go(n, &mut vec![0], &mut used, &mut f);
    Ok(())
}

/// All `(n-1)!/2` Hamilton cycles of `K_n`.
pub fn all_hamilton_cycles(n: usize) -> Result<Vec<HamiltonCycle>, TooLarge> {
    guard(n, 10)?;
    let mut out = Vec::new();
    for_each_hamilton_cycle(n, |o| out.push(HamiltonCycle::new(o.to_vec()).unwrap()))?;
    Ok(out)
}

fn cycle_weight(inst: &Instance01, order: &[usize]) -> usize {
    let n = order.len();
    (0..n).map(|i| inst.weight(order[i], order[(i + 1) % n]) as usize).sum()
}

/// Minimum tour weight of a `{0,1}`-instance.
pub fn brute_force_min_tour_weight(inst: &Instance01) -> Result<usize, TooLarge> {
    let mut best = usize::MAX;
    for_each_hamilton_cycle(inst.vertex_count(), |o| best = best.min(cycle_weight(inst, o)))?;
    Ok(best)
}

/// Whether `g` has a Hamilton path, by depth-first search over simple paths.
pub fn has_hamilton_path(g: &Graph) -> Result<bool, TooLarge> {
    let n = g.vertex_count();
    guard(n, 16)?;
    fn go(g: &Graph, v: usize, visited: u32, full: u32) -> bool {
        if visited == full {
            return true;
        }
        g.neighbors(v)
            .any(|u| visited & (1 << u) == 0 && go(g, u, visited | 1 << u, full))
    }
    if n <= 1 {
        return Ok(true);
    }
    let full = (1u32 << n) - 1;
    Ok((0..n).any(|s| go(g, s, 1 << s, full)))
}

/// Exact average of `w(H)` over Hamilton cycles containing all of `edges`,
/// or `None` when no cycle contains them.
pub fn average_completion_weight(w: &Weighting, edges: &[Edge]) -> Result<Option<Rational>, TooLarge> {
    let n = w.vertex_count();
    guard(n, 10)?;
    let (mut total, mut count) = (0i128, 0i128);
    for_each_hamilton_cycle(n, |o| {
        let h = HamiltonCycle::new(o.to_vec()).unwrap();
        if edges.iter().all(|&(u, v)| h.contains_edge(u, v)) {
            total += h.edges().map(|(u, v)| w.scaled(u, v) as i128).sum::<i128>();
            count += 1;
        }
    })?;
    Ok((count > 0).then(|| Rational::new(total, count * w.scale() as i128)))
}
