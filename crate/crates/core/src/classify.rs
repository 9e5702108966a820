//! Regular / dense / sparse classification of `{0,1}`-instances.
//!
//! Every threshold is evaluated in double precision. Comparisons demand a
//! margin of `1e-9` relative to the larger side (at least `1e-9` absolute), so
//! a near-tie is never reported as the stronger class.

use std::fmt;

use serde::Serialize;

use crate::instance::{rational_to_f64, Instance01};
use crate::matching::min_matching_weight_01;
use crate::Rational;

/// The exponent used when no other is requested, `1/28`.
pub const DEFAULT_EPS: f64 = 1.0 / 28.0;

const TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Regular,
    Dense,
    Sparse,
    Unclassified,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Regular => "regular",
            Kind::Dense => "dense",
            Kind::Sparse => "sparse",
            Kind::Unclassified => "unclassified",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which side of the regular condition holds: the matching is cheap measured
/// against `m_eps(n, d)` or against `m_eps(n, 1 - d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RegularBranch {
    Density,
    Complement,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub kind: Kind,
    pub n: usize,
    pub eps: f64,
    pub d: Rational,
    /// Slack of the dense condition, `m_eps(n, 1 - d)`; set for dense only.
    pub r: Option<f64>,
    pub min_matching_weight: usize,
    pub witness: Option<RegularBranch>,
}

/// `lhs <= rhs` with the conservative margin.
pub(crate) fn holds(lhs: f64, rhs: f64) -> bool {
    let margin = TOLERANCE * lhs.abs().max(rhs.abs()).max(1.0);
    lhs <= rhs - margin
}

/// `40 (eps + sqrt eps) ln n + 40 sqrt(eps) d^(1/4) sqrt(n ln n)`.
pub fn m_eps(n: f64, d: f64, eps: f64) -> f64 {
    let ln = n.ln();
    40.0 * (eps + eps.sqrt()) * ln + 40.0 * eps.sqrt() * d.powf(0.25) * (n * ln).sqrt()
}

/// The density window `(f, g)` of the sufficient condition for regularity:
/// `f = 1e4 (1 + 2 eps) n^(-2/3) ln n` and `g = 1e4 (1 + eps) n^(-2/7) ln n`.
pub fn corollary_thresholds(n: f64, eps: f64) -> (f64, f64) {
    let ln = n.ln();
    (
        1e4 * (1.0 + 2.0 * eps) * n.powf(-2.0 / 3.0) * ln,
        1e4 * (1.0 + eps) * n.powf(-2.0 / 7.0) * ln,
    )
}

/// The branch of the regular condition satisfied by a minimum-weight optimal
/// matching of weight `w_min`, preferring the density side.
pub fn regular_branch(n: usize, d: f64, w_min: usize, eps: f64) -> Option<RegularBranch> {
    let nf = n as f64;
    let half = d * nf / 2.0;
    let w = w_min as f64;
    if holds(w, half - m_eps(nf, d, eps)) {
        Some(RegularBranch::Density)
    } else if holds(w, half - m_eps(nf, 1.0 - d, eps)) {
        Some(RegularBranch::Complement)
    } else {
        None
    }
}

/// Upper density limit of the sparse class, `n^(-1/2 - eps) / 4`.
pub fn sparse_threshold(n: usize, eps: f64) -> f64 {
    0.25 * (n as f64).powf(-0.5 - eps)
}

pub fn is_sparse(n: usize, d: f64, eps: f64) -> bool {
    eps > 0.0 && eps < 0.5 && (d == 0.0 || holds(d, sparse_threshold(n, eps)))
}

/// The three dense conditions evaluated with `r = m_eps(n, 1 - d)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DenseCheck {
    pub r: f64,
    /// `1 - d <= 1/12`.
    pub near_complete: bool,
    /// Every optimal matching weighs at least `dn/2 - r`.
    pub matchings_near_mean: bool,
    /// `6 (1-d)^2 (n+1) + 46 r + 3 (1-d) <= n^(1/2 - eps)`.
    pub small_separator: bool,
}

impl DenseCheck {
    pub fn all(&self) -> bool {
        self.near_complete && self.matchings_near_mean && self.small_separator
    }
}

/// Left-hand side of the third dense condition.
pub fn dense_separator_bound(n: usize, d: f64, r: f64) -> f64 {
    let dbar = 1.0 - d;
    6.0 * dbar * dbar * (n as f64 + 1.0) + 46.0 * r + 3.0 * dbar
}

pub fn dense_check(n: usize, d: f64, w_min: usize, eps: f64) -> DenseCheck {
    let nf = n as f64;
    let r = m_eps(nf, 1.0 - d, eps);
    DenseCheck {
        r,
        near_complete: holds(1.0 - d, 1.0 / 12.0),
        matchings_near_mean: holds(d * nf / 2.0 - r, w_min as f64),
        small_separator: holds(dense_separator_bound(n, d, r), nf.powf(0.5 - eps)),
    }
}

/// Classification from the density and the minimum optimal-matching weight
/// alone, without materializing the instance.
pub fn classify_from_parts(n: usize, d: Rational, min_matching_weight: usize, eps: f64) -> Classification {
    let df = rational_to_f64(&d);
    let mut out = Classification {
        kind: Kind::Unclassified,
        n,
        eps,
        d,
        r: None,
        min_matching_weight,
        witness: None,
    };
    if let Some(branch) = regular_branch(n, df, min_matching_weight, eps) {
        out.kind = Kind::Regular;
        out.witness = Some(branch);
    } else if is_sparse(n, df, eps) {
        out.kind = Kind::Sparse;
    } else if n >= 4 && eps > 0.0 && eps < 0.5 {
        let check = dense_check(n, df, min_matching_weight, eps);
        if check.all() {
            out.kind = Kind::Dense;
            out.r = Some(check.r);
        }
    }
    out
}

/// Classifies `inst` from its density and a minimum-weight optimal matching.
pub fn classify(inst: &Instance01, eps: f64) -> Classification {
    classify_from_parts(
        inst.vertex_count(),
        inst.density(),
        min_matching_weight_01(inst),
        eps,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::instance::{gen_bernoulli, gen_planted_clique};

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs().max(1.0)
    }

    #[test]
    fn m_eps_examples() {
        for n in [10.0, 1e3, 1e6] {
            let eps = DEFAULT_EPS;
            assert_eq!(m_eps(n, 0.0, eps), 40.0 * (eps + eps.sqrt()) * f64::ln(n));
        }
        let e = std::f64::consts::E;
        assert!(close(m_eps(e, 1.0, 1.0), 80.0 + 40.0 * e.sqrt(), 1e-14));
        let v = m_eps(1e6, 0.5, DEFAULT_EPS);
        let first = 40.0 * (DEFAULT_EPS + DEFAULT_EPS.sqrt()) * f64::ln(1e6);
        assert!(close(first, 124.2, 1e-3));
        assert!(close(v, 23_750.0, 5e-3), "{v}");
        assert_eq!(v, 23_751.082_937_256_27);
    }

    #[test]
    fn corollary_examples() {
        let (f, _) = corollary_thresholds(1e6, DEFAULT_EPS);
        assert!(close(f, 1e4 * (15.0 / 14.0) * 1e-4 * f64::ln(1e6), 1e-12));
        assert!(f > 1.0);
        let n = 7f64.exp();
        let (f0, _) = corollary_thresholds(n, 0.0);
        assert!(close(f0, 1e4 * 7.0 * (-14.0f64 / 3.0).exp(), 1e-12));
        let mut n = 8.0;
        while n < 1e12 {
            assert!(corollary_thresholds(2.0 * n, DEFAULT_EPS).0 < corollary_thresholds(n, DEFAULT_EPS).0);
            n *= 2.0;
        }
    }

    #[test]
    fn all_zero_is_sparse() {
        for n in [3, 8, 50] {
            let c = classify(&Instance01::all_zero(n).unwrap(), DEFAULT_EPS);
            assert_eq!(c.kind, Kind::Sparse);
        }
    }

    #[test]
    fn all_ones_at_a_million() {
        let n = 1_000_000;
        let c = classify_from_parts(n, Rational::from_integer(1), n / 2, DEFAULT_EPS);
        let r = m_eps(n as f64, 0.0, DEFAULT_EPS);
        assert!(close(r, 124.2, 1e-3));
        // 46 r is about 5713 while n^(1/2 - eps) is only about 611, so the
        // separator condition fails and no class applies
        assert!(close((n as f64).powf(0.5 - DEFAULT_EPS), 610.54, 1e-4));
        let check = dense_check(n, 1.0, n / 2, DEFAULT_EPS);
        assert!(check.near_complete && check.matchings_near_mean && !check.small_separator);
        assert_eq!(c.kind, Kind::Unclassified);
    }

    #[test]
    fn returned_kind_is_sound() {
        for seed in 0..30 {
            let inst = gen_bernoulli(12, 0.5, seed).unwrap();
            let c = classify(&inst, DEFAULT_EPS);
            let d = rational_to_f64(&c.d);
            let n = 12.0;
            match c.kind {
                Kind::Regular => {
                    let w = crate::oracle::brute_force_min_optimal_matching_weight(&inst).unwrap() as f64;
                    assert!(
                        w <= d * n / 2.0 - m_eps(n, d, DEFAULT_EPS)
                            || w <= d * n / 2.0 - m_eps(n, 1.0 - d, DEFAULT_EPS)
                    );
                }
                Kind::Sparse => assert!(d <= 0.25 * n.powf(-0.5 - DEFAULT_EPS)),
                Kind::Dense => {
                    let r = c.r.unwrap();
                    assert!(1.0 - d <= 1.0 / 12.0);
                    assert!(dense_separator_bound(12, d, r) <= n.powf(0.5 - DEFAULT_EPS));
                }
                Kind::Unclassified => {}
            }
        }
    }

    #[test]
    fn sparse_region_is_left_once() {
        let n = 400;
        let mut left = false;
        for r in 2..=n {
            let c = classify(&gen_planted_clique(n, r).unwrap(), DEFAULT_EPS);
            let sparse = c.kind == Kind::Sparse;
            assert!(!(left && sparse), "re-entered sparse region at r = {r}");
            left |= !sparse;
        }
        assert!(left);
    }

    #[test]
    fn regular_on_cheap_matching() {
        // zero-graph a perfect matching on a large even n: the minimum
        // optimal matching weighs 0 while dn/2 is nearly n/2
        let n = 2000;
        let pm = Graph::from_edges(n, (0..n / 2).map(|k| (2 * k, 2 * k + 1)));
        let inst = Instance01::from_zero_graph(&pm).unwrap();
        let c = classify(&inst, DEFAULT_EPS);
        assert_eq!(c.kind, Kind::Regular);
        assert_eq!(c.min_matching_weight, 0);
        assert!(c.witness.is_some());
    }
}
