//! Monte-Carlo estimate of the theta-region volume, used as the independent
//! oracle for the exact cone computation.
//!
//! Points are drawn uniformly from the bounding box given by the axis
//! multiplicities; the hit fraction against exact membership scales back to
//! the volume. Membership is decided by a floating-point filter over the
//! facet inequalities with a conservative rounding bound, escalating to the
//! exact rational test only for samples too close to a facet, so the
//! decision for every sampled point is exact.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rational::{rat_from_f64, to_f64};

use super::hull::NewtonComplex;
use super::point::RationalPoint;

/// Samples are drawn in fixed-size chunks with per-chunk derived RNG
/// streams, so a future parallel split over chunk indices reproduces the
/// sequential counts exactly.
const CHUNK: u64 = 1 << 16;

/// Returns `(estimate, standard_error)` for the theta-region volume of a
/// convenient complex. Deterministic for a fixed seed.
pub fn monte_carlo_theta_volume(
    complex: &NewtonComplex,
    samples: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    if let Some(axis) = complex.first_nonconvenient_axis() {
        return Err(Error::NotConvenient { axis });
    }
    if samples == 0 {
        return Err(Error::InvalidArgument(
            "samples must be at least 1".into(),
        ));
    }
    let n = complex.dimension();
    let box_sides: Vec<f64> = (0..n)
        .map(|k| to_f64(complex.axis_value(k).expect("convenient complex")))
        .collect();
    let box_volume: f64 = box_sides.iter().product();
    if box_volume == 0.0 {
        return Ok((0.0, 0.0));
    }

    let facets: Vec<(Vec<f64>, f64)> = complex
        .facets()
        .iter()
        .map(|f| (f.normal().to_f64_vec(), to_f64(f.offset())))
        .collect();
    // Rounding bound for an n-term dot product plus the float conversions
    // of the normal and offset themselves.
    let eps_factor = 2.0 * (n as f64 + 4.0) * f64::EPSILON;

    let mut outside = 0u64;
    let mut point = vec![0.0f64; n];
    let total = samples as u64;
    let chunks = total.div_ceil(CHUNK);
    for chunk in 0..chunks {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(chunk + 1);
        let count = CHUNK.min(total - chunk * CHUNK);
        for _ in 0..count {
            for (k, side) in box_sides.iter().enumerate() {
                point[k] = rng.gen::<f64>() * side;
            }
            if !filtered_contains(complex, &facets, &point, eps_factor) {
                outside += 1;
            }
        }
    }

    let p = outside as f64 / total as f64;
    let estimate = box_volume * p;
    let std_error = box_volume * (p * (1.0 - p) / total as f64).sqrt();
    Ok((estimate, std_error))
}

fn filtered_contains(
    complex: &NewtonComplex,
    facets: &[(Vec<f64>, f64)],
    point: &[f64],
    eps_factor: f64,
) -> bool {
    let mut uncertain = false;
    for (normal, offset) in facets {
        let mut s = 0.0f64;
        let mut magnitude = offset.abs();
        for (a, x) in normal.iter().zip(point) {
            s += a * x;
            magnitude += (a * x).abs();
        }
        s -= offset;
        let bound = eps_factor * magnitude;
        if s < -bound {
            return false; // certainly violates this facet
        }
        if s <= bound {
            uncertain = true;
        }
    }
    if !uncertain {
        return true;
    }
    // Near-facet sample: decide exactly. The f64 coordinates convert to
    // rationals without loss.
    let exact = RationalPoint::new(
        point
            .iter()
            .map(|&x| rat_from_f64(x).expect("finite sample"))
            .collect(),
    );
    complex.contains(&exact).expect("dimension checked")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::volume::theta_volume;
    use crate::rational::to_f64 as rat_to_f64;

    fn hull(rows: &[&[i64]], n: usize) -> NewtonComplex {
        let pts: Vec<RationalPoint> = rows.iter().map(|r| RationalPoint::from_ints(r)).collect();
        NewtonComplex::lower_hull(&pts, n).unwrap()
    }

    #[test]
    fn agrees_with_exact_volume_on_weighted_monomials() {
        let complex = hull(&[&[3, 0], &[0, 2]], 2);
        let exact = rat_to_f64(&theta_volume(&complex).unwrap().volume);
        let (estimate, se) = monte_carlo_theta_volume(&complex, 200_000, 42).unwrap();
        assert!(se > 0.0);
        assert!(
            (estimate - exact).abs() <= 3.0 * se,
            "estimate {estimate} exact {exact} se {se}"
        );
    }

    #[test]
    fn corner_simplex_in_three_variables() {
        let complex = hull(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], 3);
        let (estimate, se) = monte_carlo_theta_volume(&complex, 200_000, 7).unwrap();
        let exact = 1.0 / 6.0;
        assert!((estimate - exact).abs() <= 3.0 * se);
    }

    #[test]
    fn zero_samples_is_an_error() {
        let complex = hull(&[&[1, 0], &[0, 1]], 2);
        assert!(monte_carlo_theta_volume(&complex, 0, 1).is_err());
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let complex = hull(&[&[2, 0], &[0, 1]], 2);
        let a = monte_carlo_theta_volume(&complex, 70_000, 5).unwrap();
        let b = monte_carlo_theta_volume(&complex, 70_000, 5).unwrap();
        assert_eq!(a, b);
        let c = monte_carlo_theta_volume(&complex, 70_000, 6).unwrap();
        assert_ne!(a.0, c.0);
    }

    #[test]
    fn non_convenient_complex_is_rejected() {
        let complex = hull(&[&[0, 3]], 2);
        assert!(matches!(
            monte_carlo_theta_volume(&complex, 10, 1),
            Err(Error::NotConvenient { axis: 0 })
        ));
    }
}
