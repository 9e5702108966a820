use rayon::prelude::*;

use super::DominateError;
use crate::instance::{HamiltonCycle, Instance01};
use crate::Rational;

/// Largest `n` accepted by the exhaustive routines.
pub const EXACT_MAX_N: usize = 12;

fn guard(n: usize) -> Result<(), DominateError> {
    if n > EXACT_MAX_N {
        return Err(DominateError::TooLarge { n, max: EXACT_MAX_N });
    }
    if n < 3 {
        return Err(DominateError::TooFewVertices(n));
    }
    Ok(())
}

/// `(n-1)!/2`.
pub fn cycle_count(n: usize) -> u64 {
    (3..n).map(|k| k as u64).product::<u64>()
}

/// Visits every cycle `0, second, ..., last` of one job; the middle is
/// enumerated in lexicographic order.
fn walk_job<F: FnMut(&[usize])>(n: usize, second: usize, last: usize, visit: &mut F) {
    fn go<F: FnMut(&[usize])>(order: &mut [usize], pos: usize, used: u32, visit: &mut F) {
        let n = order.len();
        if pos == n - 1 {
            visit(order);
            return;
        }
        for v in 1..n {
            if used & 1 << v == 0 {
                order[pos] = v;
                go(order, pos + 1, used | 1 << v, visit);
            }
        }
    }
    let mut order = vec![0; n];
    order[1] = second;
    order[n - 1] = last;
    go(&mut order, 2, 1 | 1 << second | 1 << last, visit);
}

/// Jobs `(second, last)` with `second < last`; together they cover every
/// canonical cycle exactly once.
fn jobs(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

/// Runs `visit` over all canonical cycles in parallel and sums the per-job
/// results in job order.
fn fold_cycles<T, F>(n: usize, make: impl Fn() -> T + Sync, visit: F, merge: impl Fn(&mut T, T) + Sync) -> T
where
    T: Send,
    F: Fn(&mut T, &[usize]) + Sync,
{
    let parts: Vec<T> = jobs(n)
        .into_par_iter()
        .map(|(a, b)| {
            let mut acc = make();
            walk_job(n, a, b, &mut |o| visit(&mut acc, o));
            acc
        })
        .collect();
    let mut total = make();
    for p in parts {
        merge(&mut total, p);
    }
    total
}

fn one_rows(inst: &Instance01) -> Vec<u16> {
    let n = inst.vertex_count();
    (0..n)
        .map(|u| (0..n).filter(|&v| v != u && inst.weight(u, v) == 1).fold(0u16, |m, v| m | 1 << v))
        .collect()
}

fn order_weight(rows: &[u16], order: &[usize]) -> usize {
    let n = order.len();
    let mut w = (rows[order[n - 1]] >> order[0] & 1) as usize;
    for i in 1..n {
        w += (rows[order[i - 1]] >> order[i] & 1) as usize;
    }
    w
}

/// `hist[k]` is the number of Hamilton cycles of weight `k`.
pub fn weight_histogram(inst: &Instance01) -> Result<Vec<u64>, DominateError> {
    let n = inst.vertex_count();
    guard(n)?;
    let rows = one_rows(inst);
    Ok(fold_cycles(
        n,
        || vec![0u64; n + 1],
        |h, o| h[order_weight(&rows, o)] += 1,
        |t, p| t.iter_mut().zip(p).for_each(|(x, y)| *x += y),
    ))
}

/// Fraction of Hamilton cycles weighing at least `tour_weight`.
pub fn dominated_fraction(hist: &[u64], tour_weight: usize) -> Rational {
    let total: u64 = hist.iter().sum();
    let at_least: u64 = hist.iter().skip(tour_weight).sum();
    Rational::new(at_least as i128, total as i128)
}

/// Exact domination fraction of `tour`: the share of all `(n-1)!/2` cycles
/// whose weight is at least `w(tour)`.
pub fn domination_exact(inst: &Instance01, tour: &HamiltonCycle) -> Result<Rational, DominateError> {
    let n = inst.vertex_count();
    if tour.len() != n {
        return Err(DominateError::Inconsistent("tour length differs from n"));
    }
    let hist = weight_histogram(inst)?;
    let w = inst.tour_weight(tour)?;
    Ok(dominated_fraction(&hist, w))
}

/// Whether `h` avoids every edge inside `s` and every vertex outside `s` has
/// at most one cycle neighbour in `s`.
pub fn event_e_check(h: &HamiltonCycle, s: &[usize]) -> bool {
    let n = h.len();
    let mut in_s = vec![false; n];
    for &v in s {
        in_s[v] = true;
    }
    let order = h.order();
    let mut hits = vec![0u8; n];
    for i in 0..n {
        let (u, v) = (order[i], order[(i + 1) % n]);
        match (in_s[u], in_s[v]) {
            (true, true) => return false,
            (true, false) => hits[v] += 1,
            (false, true) => hits[u] += 1,
            (false, false) => {}
        }
    }
    hits.iter().all(|&k| k <= 1)
}

fn validate_set(n: usize, s: &[usize]) -> Result<(), DominateError> {
    let mut seen = vec![false; n];
    for &v in s {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(DominateError::Inconsistent("vertex set out of range or repeated"));
        }
    }
    Ok(())
}

/// Exact probability that a uniform Hamilton cycle of `K_n` lies in the
/// event of [`event_e_check`].
pub fn event_e_probability_exact(n: usize, s: &[usize]) -> Result<Rational, DominateError> {
    guard(n)?;
    validate_set(n, s)?;
    let mask = s.iter().fold(0u16, |m, &v| m | 1 << v);
    let hits = fold_cycles(
        n,
        || 0u64,
        |acc, o| {
            let mut bad = 0u16;
            let mut twice = 0u16;
            let ok = (0..n).all(|i| {
                let (u, v) = (o[i], o[(i + 1) % n]);
                let (su, sv) = (mask >> u & 1 == 1, mask >> v & 1 == 1);
                let outside = match (su, sv) {
                    (true, true) => return false,
                    (true, false) => v,
                    (false, true) => u,
                    (false, false) => return true,
                };
                twice |= bad & 1 << outside;
                bad |= 1 << outside;
                true
            });
            if ok && twice == 0 {
                *acc += 1;
            }
        },
        |t, p| *t += p,
    );
    Ok(Rational::new(hits as i128, cycle_count(n) as i128))
}

/// The two union bounds on the complement of the event:
/// `C(s,2) * 2/(n-1)` for an edge inside `S` and
/// `(n-s) * s(s-1) / ((n-1)(n-2))` for a vertex with two neighbours in `S`.
pub fn event_e_union_bound(n: usize, s: usize) -> Rational {
    let (n, s) = (n as i128, s as i128);
    let inside = Rational::new(s * (s - 1) / 2 * 2, n - 1);
    let twice = Rational::new((n - s) * s * (s - 1), (n - 1) * (n - 2));
    Rational::from_integer(1) - inside - twice
}
