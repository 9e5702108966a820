//! Polynomial-time TSP domination pipeline for `{0,1}`-weighted complete graphs.
//!
//! An instance is classified as regular, dense or sparse and handed to the
//! matching-based tour construction suited to its class:
//!
//! * [`extend::algorithm_a`]: minimum-weight optimal matching extended to a
//!   Hamilton cycle by conditional expectations,
//! * [`dense::algorithm_b`]: vertex cover plus maximum double matching,
//! * [`sparse::algorithm_c`]: low-degree separator and a Dirac-type Hamilton
//!   cycle through forced edges.
//!
//! [`dominate::solve`] ties these together, attaches a certified domination
//! bound, and [`dominate`] also estimates the domination fraction of any tour
//! empirically, exactly for small `n` or by Monte Carlo sampling.

pub mod classify;
pub mod dense;
pub mod dominate;
pub mod extend;
pub mod graph;
pub mod instance;
pub mod matching;
pub mod oracle;
pub mod sparse;

/// Exact rational used for densities, weights and conditional expectations.
pub type Rational = num_rational::Ratio<i128>;

pub use classify::{classify, Classification, Kind, RegularBranch, DEFAULT_EPS};
pub use dominate::{
    certified_guarantee, domination_exact, domination_mc, freedman_tail, solve, CertifiedSource,
    DominationReport, Empirical, EstimateMethod, Guarantee, McEstimate, SolveOptions,
};
pub use graph::{edge, Edge, Graph};
pub use instance::{
    density, tour_weight, HamiltonCycle, Instance01, InstanceError, ParseError, Weighting,
};
pub use matching::{DoubleMatching, Matching};
