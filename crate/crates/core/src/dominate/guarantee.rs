use serde::Serialize;

use super::DominateError;
use crate::classify::{Classification, Kind};
use crate::instance::{rational_to_f64, Instance01};

/// Bound on the martingale differences of the vertex-exposure martingale.
pub const MARTINGALE_STEP: f64 = 6.0;

/// `min(1, 2 exp(-(t^2/2) / (sigma_sq + r t / 3)))`; 1 for `t <= 0`.
pub fn freedman_tail(t: f64, sigma_sq: f64, r: f64) -> f64 {
    if t <= 0.0 {
        return 1.0;
    }
    let exponent = -(t * t / 2.0) / (sigma_sq + r * t / 3.0);
    (2.0 * exponent.exp()).min(1.0)
}

/// Variance proxy `60 (sqrt(d) n + 1)` for edge density `d`.
pub fn variance_bound(n: usize, d: f64) -> f64 {
    60.0 * (d.sqrt() * n as f64 + 1.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertifiedSource {
    /// `1 - 6 n^(-1/28)`, valid for every class above the unknown `n_0`.
    Composite,
    /// Tail bound on the tour weight with `t = dn - w(H)`.
    FreedmanRegular,
    /// `1 - 2 n^(-eps)` for regular instances with `n > max(6, e^(1/eps))`.
    RegularFloor,
    /// `1 - 6 n^(-2 eps)`.
    Dense,
    /// `1 - 6 n^(-2 eps)`.
    Sparse,
    None,
}

impl CertifiedSource {
    pub fn as_str(self) -> &'static str {
        match self {
            CertifiedSource::Composite => "composite",
            CertifiedSource::FreedmanRegular => "freedman-regular",
            CertifiedSource::RegularFloor => "regular-floor",
            CertifiedSource::Dense => "dense",
            CertifiedSource::Sparse => "sparse",
            CertifiedSource::None => "none",
        }
    }
}

/// Lower bounds on the domination ratio of a tour. Negative bounds are
/// reported as 0 with the `vacuous` flag set.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Guarantee {
    pub ratio: Option<f64>,
    pub source: CertifiedSource,
    pub vacuous: bool,
    /// Raw Freedman ratio `1 - tail`, when `t > 0` on a regular instance.
    pub freedman: Option<f64>,
    pub composite: Option<f64>,
    pub composite_vacuous: bool,
}

impl Guarantee {
    pub fn none() -> Self {
        Guarantee {
            ratio: None,
            source: CertifiedSource::None,
            vacuous: false,
            freedman: None,
            composite: None,
            composite_vacuous: false,
        }
    }
}

fn floored(x: f64) -> (f64, bool) {
    if x <= 0.0 {
        (0.0, true)
    } else {
        (x, false)
    }
}

/// `1 - 6 n^(-1/28)`, unfloored.
pub fn composite_bound(n: usize) -> f64 {
    1.0 - 6.0 * (n as f64).powf(-1.0 / 28.0)
}

/// `1 - 6 n^(-2 eps)`, unfloored.
pub fn separator_bound(n: usize, eps: f64) -> f64 {
    1.0 - 6.0 * (n as f64).powf(-2.0 * eps)
}

/// `1 - 2 n^(-eps)`, unfloored.
pub fn regular_floor(n: usize, eps: f64) -> f64 {
    1.0 - 2.0 * (n as f64).powf(-eps)
}

/// Whether `n` is large enough for the regular definition,
/// `n > max(6, e^(1/eps))`.
pub fn regular_size_ok(n: usize, eps: f64) -> bool {
    let nf = n as f64;
    nf > 6.0 && nf.ln() > 1.0 / eps
}

/// Certified domination bound for a tour of weight `tour_weight` produced by
/// the algorithm matching `classification`.
pub fn certified_guarantee(
    inst: &Instance01,
    classification: &Classification,
    tour_weight: usize,
) -> Result<Guarantee, DominateError> {
    let n = inst.vertex_count();
    if classification.n != n || classification.d != inst.density() {
        return Err(DominateError::Inconsistent("classification does not match instance"));
    }
    if tour_weight > n {
        return Err(DominateError::Inconsistent("tour weight exceeds n"));
    }
    let eps = classification.eps;
    let d = rational_to_f64(&classification.d);
    let mut out = Guarantee::none();
    if classification.kind == Kind::Unclassified {
        return Ok(out);
    }
    let (composite, composite_vacuous) = floored(composite_bound(n));
    out.composite = Some(composite);
    out.composite_vacuous = composite_vacuous;

    let (raw, source) = match classification.kind {
        Kind::Regular => {
            // the same deviation t = dn - w(H*) drives both the w side and
            // the 1 - w side; the weaker of the two tails is reported
            let t = d * n as f64 - tour_weight as f64;
            let freedman = (t > 0.0).then(|| {
                let tail = freedman_tail(t, variance_bound(n, d), MARTINGALE_STEP)
                    .max(freedman_tail(t, variance_bound(n, 1.0 - d), MARTINGALE_STEP));
                1.0 - tail
            });
            out.freedman = freedman;
            let floor = (classification.witness.is_some() && regular_size_ok(n, eps))
                .then(|| regular_floor(n, eps));
            match (freedman, floor) {
                (Some(f), Some(g)) if g > f => (g, CertifiedSource::RegularFloor),
                (Some(f), _) => (f, CertifiedSource::FreedmanRegular),
                (None, Some(g)) => (g, CertifiedSource::RegularFloor),
                (None, None) => (0.0, CertifiedSource::FreedmanRegular),
            }
        }
        Kind::Dense => (separator_bound(n, eps), CertifiedSource::Dense),
        Kind::Sparse => (separator_bound(n, eps), CertifiedSource::Sparse),
        Kind::Unclassified => unreachable!(),
    };
    let (ratio, vacuous) = floored(raw);
    out.ratio = Some(ratio);
    out.source = source;
    out.vacuous = vacuous;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn freedman_examples() {
        assert_eq!(freedman_tail(0.0, 100.0, 6.0), 1.0);
        let v = freedman_tail(60.0, 100.0, 6.0);
        assert!((v - 2.0 * (-1800.0f64 / 220.0).exp()).abs() < 1e-18);
        assert!((v - 5.594e-4).abs() < 1e-7);
        let mut prev = 1.0;
        for k in 0..200 {
            let cur = freedman_tail(k as f64, 50.0, 6.0);
            assert!(cur <= prev);
            prev = cur;
        }
    }

    #[test]
    fn closed_forms() {
        let n = 1_000_000;
        let b = separator_bound(n, 1.0 / 28.0);
        assert!((b - (1.0 - 6.0 * (-(2.0 / 28.0) * (n as f64).ln()).exp())).abs() < 1e-15);
        assert!(b < 0.0);
        assert!(regular_size_ok(1000, 1.0 / 6.0));
        assert!(!regular_size_ok(1000, 1.0 / 28.0));
        let sigma = variance_bound(10_000, 0.5);
        // 2 exp(-125000 / (sigma + 1000)) is about 1.49, so the tail caps at 1
        let raw = 2.0 * (-125_000.0 / (sigma + 1000.0)).exp();
        assert!((raw - 1.490_711_662_288_975).abs() < 1e-12);
        assert_eq!(freedman_tail(500.0, sigma, 6.0), 1.0);
    }
}
