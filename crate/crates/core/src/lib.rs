//! Explicit sets of k-recurrence and non-recurrence, the torus skew products
//! that witness non-recurrence, Weyl sums and multiple ergodic averages along
//! those sets, and exhaustive arithmetic-progression search.
//!
//! Every fractional part is evaluated in exact fixed point with a tracked
//! error radius (see [`fixedpoint`]); floating point enters only when phases
//! are mapped to the unit circle.

pub mod averages;
pub mod error;
pub mod fixedpoint;
pub mod intersectivity;
pub mod lemma;
pub mod parallel;
pub mod sequences;
pub mod torus;

pub use averages::{
    block_sign_report, log_grid, recurrence_average, weighted_average_diff,
    weighted_average_diff_profile, weyl_profile, weyl_sum, ComplexAvg, Elements, WeightedDiff,
    WindowReport,
};
pub use error::{Error, Result};
pub use fixedpoint::{
    frac_npow, parse_rational, AlphaSpec, Membership, Precision, Rational, UnitValue,
};
pub use intersectivity::{
    build_witness, find_ap, intersectivity_scan, ApWitness, DenseSet, ScanStats,
};
pub use lemma::{solve_by_elimination, solve_canonical, LemmaSolution};
pub use parallel::with_workers;
pub use sequences::{density, gen_sk, gen_skprime, power_set, SetKind, SetStream};
pub use torus::{
    monte_carlo_return_check, nonrecurrence_certificate, system_parameter, verify_identity_e1,
    CertificateReport, EpsilonBall, SkewSystem, TorusPoint,
};
