//! Exact computation of Newton numbers, directional Lelong numbers and
//! residual Monge-Ampere mass bounds for polyhedral indicators and for
//! `log|f|` with `f` a polynomial mapping, plus seeded Monte-Carlo
//! estimators that verify the exact kernel numerically.
//!
//! The exact side works entirely in arbitrary-precision rational
//! arithmetic: Newton polyhedra with their facet structure, theta-region
//! volumes by cone triangulation, the bound chain
//! `standard <= simplex <= newton <= upper`, mixed masses by polarization
//! with optional regularization, and Milnor lower bounds. The numerical
//! side samples shrinking tori to recover directional Lelong numbers and
//! checks the monotone convergence of logarithmic tangents.

pub mod error;
pub mod estimator;
pub mod geometry;
pub mod indicator;
pub mod mapping;
pub mod newton;
pub mod rational;

pub use error::{Error, Result};
pub use estimator::{
    estimate_directional_lelong, indicator_domination_check, tangent_convergence_check,
    ConvergenceRow, ConvergenceTable, SamplingPlan, Statistic,
};
pub use geometry::{
    monte_carlo_theta_volume, theta_volume, Facet, NewtonComplex, RationalPoint, VolumeResult,
};
pub use indicator::{AxisMultiplicities, ComparisonBound, PolyhedralIndicator, Weight};
pub use mapping::{Component, ComplexRat, PolynomialMapping, Term};
pub use newton::{
    analyze, milnor_lower_bound, milnor_lower_bound_opt, mixed_mass, newton_number, product_bound,
    residual_upper_bound, simplex_bound, standard_bound, BoundReport, MixedMassResult,
    MixedMassTerm, SimplexSearchConfig,
};
pub use rational::{parse_rat, rat, rat_int, to_f64, Rat, RatPair};

/// Core crate version, recorded in CLI reports.
pub fn version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}
