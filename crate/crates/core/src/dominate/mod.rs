//! The dispatching driver, certified domination bounds, and empirical
//! domination estimates.

mod exact;
mod guarantee;
mod montecarlo;

use serde::Serialize;
use thiserror::Error;

use crate::classify::{classify, dense_check, Classification, Kind, DEFAULT_EPS};
use crate::dense::{algorithm_b, DenseError};
use crate::extend::{algorithm_a, ExtendError};
use crate::graph::binom2;
use crate::instance::{rational_to_f64, HamiltonCycle, Instance01, InstanceError};
use crate::sparse::{algorithm_c, algorithm_c_structural, SparseError};
use crate::Rational;

pub use exact::{
    cycle_count, dominated_fraction, domination_exact, event_e_check, event_e_probability_exact,
    event_e_union_bound, weight_histogram, EXACT_MAX_N,
};
pub use guarantee::{
    certified_guarantee, composite_bound, freedman_tail, regular_floor, regular_size_ok,
    separator_bound, variance_bound, CertifiedSource, Guarantee, MARTINGALE_STEP,
};
pub use montecarlo::{domination_mc, wilson_interval, McEstimate, BLOCK_SIZE, MIN_SAMPLES};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DominateError {
    #[error("n = {n} exceeds the limit {max}")]
    TooLarge { n: usize, max: usize },
    #[error("need at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("at least {min} samples required, got {0}", min = MIN_SAMPLES)]
    TooFewSamples(u64),
    #[error("worker count must be positive")]
    NoWorkers,
    #[error("inconsistent input: {0}")]
    Inconsistent(&'static str),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Extend(#[from] ExtendError),
    #[error(transparent)]
    Dense(#[from] DenseError),
    #[error(transparent)]
    Sparse(#[from] SparseError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Algorithm {
    A,
    B,
    C,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::A => "A",
            Algorithm::B => "B",
            Algorithm::C => "C",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimateMethod {
    Exact,
    MonteCarlo,
}

impl EstimateMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            EstimateMethod::Exact => "exact",
            EstimateMethod::MonteCarlo => "monte-carlo",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Empirical {
    pub estimate: f64,
    pub halfwidth: f64,
    pub method: EstimateMethod,
    /// Cycles examined: all of them for the exact method.
    pub samples: u64,
    /// The exact fraction, for the exact method.
    #[serde(skip)]
    pub exact: Option<Rational>,
}

impl Empirical {
    pub fn exact(fraction: Rational, n: usize) -> Self {
        Empirical {
            estimate: rational_to_f64(&fraction),
            halfwidth: 0.0,
            method: EstimateMethod::Exact,
            samples: cycle_count(n),
            exact: Some(fraction),
        }
    }

    pub fn from_mc(est: &McEstimate) -> Self {
        Empirical {
            estimate: est.estimate,
            halfwidth: est.halfwidth,
            method: EstimateMethod::MonteCarlo,
            samples: est.samples,
            exact: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveOptions {
    pub eps: f64,
    /// Attach the exact domination fraction (`n <= 12`).
    pub exact: bool,
    /// Attach a Monte Carlo estimate with this many samples.
    pub samples: Option<u64>,
    pub seed: u64,
    pub workers: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            eps: DEFAULT_EPS,
            exact: false,
            samples: None,
            seed: 0,
            workers: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DominationReport {
    pub tour: HamiltonCycle,
    pub tour_weight: usize,
    pub classification: Classification,
    pub algorithm: Algorithm,
    pub guarantee: Guarantee,
    pub empirical: Option<Empirical>,
    pub seed: Option<u64>,
}

impl DominationReport {
    pub fn certified_ratio(&self) -> Option<f64> {
        self.guarantee.ratio
    }

    pub fn certified_source(&self) -> CertifiedSource {
        self.guarantee.source
    }
}

/// Checks the ceiling implied by the conditional-expectation bound: the tour
/// of Algorithm A weighs at most `dn` for even `n` and at most `dn + 1 + d`
/// for odd `n`.
pub fn within_mean_ceiling(inst: &Instance01, tour_weight: usize) -> bool {
    let n = inst.vertex_count();
    let ones = inst.one_edge_count();
    let pairs = binom2(n);
    if n.is_multiple_of(2) {
        tour_weight * (n - 1) <= 2 * ones
    } else {
        tour_weight * pairs <= ones * (n + 1) + pairs
    }
}

fn run_a(inst: &Instance01) -> Result<(HamiltonCycle, usize), DominateError> {
    let tour = algorithm_a(inst)?;
    let w = inst.tour_weight(&tour)?;
    assert!(within_mean_ceiling(inst, w), "Algorithm A tour above the mean ceiling");
    Ok((tour, w))
}

/// Classifies `inst`, runs the matching algorithm and attaches the certified
/// bound plus any requested empirical estimate.
pub fn solve(inst: &Instance01, opts: &SolveOptions) -> Result<DominationReport, DominateError> {
    let n = inst.vertex_count();
    if n < 3 {
        return Err(DominateError::TooFewVertices(n));
    }
    if opts.workers == 0 {
        return Err(DominateError::NoWorkers);
    }
    let classification = classify(inst, opts.eps);
    let (tour, tour_weight, algorithm, certify) = match classification.kind {
        Kind::Regular => {
            let (t, w) = run_a(inst)?;
            (t, w, Algorithm::A, true)
        }
        Kind::Dense => {
            let r = classification.r.expect("dense classification carries r");
            let out = algorithm_b(inst, r, opts.eps)?;
            let w = inst.tour_weight(&out.cycle)?;
            (out.cycle.clone(), w, Algorithm::B, out.certified())
        }
        Kind::Sparse => match algorithm_c(inst, opts.eps) {
            Ok(out) => {
                let w = inst.tour_weight(&out.cycle)?;
                (out.cycle, w, Algorithm::C, !out.separator_warning)
            }
            Err(_) => {
                let (t, w) = run_a(inst)?;
                (t, w, Algorithm::A, false)
            }
        },
        Kind::Unclassified => {
            let (t, w) = run_a(inst)?;
            let mut best = (t, w, Algorithm::A);
            let d = rational_to_f64(&classification.d);
            let r = dense_check(n, d, classification.min_matching_weight, opts.eps).r;
            if let Ok(out) = algorithm_b(inst, r, opts.eps) {
                let w = inst.tour_weight(&out.cycle)?;
                if w < best.1 {
                    best = (out.cycle, w, Algorithm::B);
                }
            }
            if let Ok(out) = algorithm_c_structural(inst) {
                let w = inst.tour_weight(&out.cycle)?;
                if w < best.1 {
                    best = (out.cycle, w, Algorithm::C);
                }
            }
            (best.0, best.1, best.2, false)
        }
    };

    let mut guarantee = certified_guarantee(inst, &classification, tour_weight)?;
    if !certify {
        guarantee.ratio = None;
        guarantee.source = CertifiedSource::None;
        guarantee.vacuous = false;
        guarantee.freedman = None;
    }

    let empirical = if opts.exact {
        Some(Empirical::exact(domination_exact(inst, &tour)?, n))
    } else if let Some(samples) = opts.samples {
        Some(Empirical::from_mc(&domination_mc(inst, &tour, samples, opts.seed, opts.workers)?))
    } else {
        None
    };
    Ok(DominationReport {
        seed: opts.samples.map(|_| opts.seed),
        tour,
        tour_weight,
        classification,
        algorithm,
        guarantee,
        empirical,
    })
}
