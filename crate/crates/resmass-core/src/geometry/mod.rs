//! Exact rational convex geometry for Newton polyhedra: hulls with the
//! positive orthant as recession cone, facet enumeration, membership tests,
//! theta-region volumes and their Monte-Carlo oracle.
//!
//! Everything except the Monte-Carlo estimator works in arbitrary-precision
//! rational arithmetic; nothing in the exact paths ever rounds.

mod hull;
mod linalg;
mod lp;
mod point;
mod sampling;
mod volume;

pub use hull::{Facet, NewtonComplex};
pub use point::RationalPoint;
pub use sampling::monte_carlo_theta_volume;
pub use volume::{theta_volume, VolumeResult};
