//! JSON shapes written to stdout. Field order is fixed by the struct order.

use domtsp::dominate::{DominationReport, McEstimate};
use domtsp::{Classification, HamiltonCycle, Rational};
use serde::Serialize;

pub const SCHEMA: u32 = 1;

fn one_indexed(h: &HamiltonCycle) -> Vec<usize> {
    h.order().iter().map(|v| v + 1).collect()
}

#[derive(Serialize)]
pub struct SolveJson {
    pub schema: u32,
    pub n: usize,
    pub d_num: i128,
    pub d_den: i128,
    pub kind: &'static str,
    pub eps: String,
    pub algorithm: &'static str,
    pub tour: Vec<usize>,
    pub tour_weight: usize,
    pub certified_ratio: Option<f64>,
    pub certified_source: &'static str,
    pub certified_vacuous: bool,
    pub composite_ratio: Option<f64>,
    pub composite_vacuous: bool,
    pub empirical_method: Option<&'static str>,
    pub empirical_estimate: Option<f64>,
    pub empirical_halfwidth: Option<f64>,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
}

impl SolveJson {
    pub fn new(rep: &DominationReport, eps: &str) -> Self {
        let c = &rep.classification;
        let emp = rep.empirical.as_ref();
        SolveJson {
            schema: SCHEMA,
            n: c.n,
            d_num: *c.d.numer(),
            d_den: *c.d.denom(),
            kind: c.kind.as_str(),
            eps: eps.to_string(),
            algorithm: rep.algorithm.as_str(),
            tour: one_indexed(&rep.tour),
            tour_weight: rep.tour_weight,
            certified_ratio: rep.guarantee.ratio,
            certified_source: rep.guarantee.source.as_str(),
            certified_vacuous: rep.guarantee.vacuous,
            composite_ratio: rep.guarantee.composite,
            composite_vacuous: rep.guarantee.composite_vacuous,
            empirical_method: emp.map(|e| e.method.as_str()),
            empirical_estimate: emp.map(|e| e.estimate),
            empirical_halfwidth: emp.map(|e| e.halfwidth),
            samples: emp.map(|e| e.samples),
            seed: rep.seed,
        }
    }
}

#[derive(Serialize)]
pub struct ClassifyJson {
    pub schema: u32,
    pub n: usize,
    pub d_num: i128,
    pub d_den: i128,
    pub kind: &'static str,
    pub eps: String,
    pub min_matching_weight: usize,
    pub regular_branch: Option<&'static str>,
    pub dense_slack: Option<f64>,
}

impl ClassifyJson {
    pub fn new(c: &Classification, eps: &str) -> Self {
        ClassifyJson {
            schema: SCHEMA,
            n: c.n,
            d_num: *c.d.numer(),
            d_den: *c.d.denom(),
            kind: c.kind.as_str(),
            eps: eps.to_string(),
            min_matching_weight: c.min_matching_weight,
            regular_branch: c.witness.map(|b| match b {
                domtsp::RegularBranch::Density => "density",
                domtsp::RegularBranch::Complement => "complement",
            }),
            dense_slack: c.r,
        }
    }
}

#[derive(Serialize)]
pub struct EstimateJson {
    pub schema: u32,
    pub n: usize,
    pub tour_weight: usize,
    pub method: &'static str,
    pub empirical_estimate: f64,
    pub empirical_halfwidth: f64,
    pub lower: f64,
    pub upper: f64,
    pub exact_num: Option<i128>,
    pub exact_den: Option<i128>,
    pub samples: u64,
    pub seed: Option<u64>,
}

impl EstimateJson {
    pub fn exact(n: usize, tour_weight: usize, p: Rational, cycles: u64) -> Self {
        let est = domtsp::instance::rational_to_f64(&p);
        EstimateJson {
            schema: SCHEMA,
            n,
            tour_weight,
            method: "exact",
            empirical_estimate: est,
            empirical_halfwidth: 0.0,
            lower: est,
            upper: est,
            exact_num: Some(*p.numer()),
            exact_den: Some(*p.denom()),
            samples: cycles,
            seed: None,
        }
    }

    pub fn monte_carlo(n: usize, tour_weight: usize, mc: &McEstimate) -> Self {
        EstimateJson {
            schema: SCHEMA,
            n,
            tour_weight,
            method: "monte-carlo",
            empirical_estimate: mc.estimate,
            empirical_halfwidth: mc.halfwidth,
            lower: mc.lower,
            upper: mc.upper,
            exact_num: None,
            exact_den: None,
            samples: mc.samples,
            seed: Some(mc.seed),
        }
    }
}

#[derive(Serialize)]
pub struct ReduceJson {
    pub schema: u32,
    pub n: usize,
    pub n_prime: usize,
    pub eps: String,
    pub output: String,
    /// Vertex `i + 1` of the input graph sits at `s_set[i]` in the instance.
    pub s_set: Vec<usize>,
}

#[derive(Serialize)]
pub struct ErrorJson<'a> {
    pub schema: u32,
    pub error: &'a str,
    pub reason: String,
}
