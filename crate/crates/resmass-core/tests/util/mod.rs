//! Shared generators for the randomized integration suites. Everything is
//! seeded, so every suite is deterministic run to run.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use resmass_core::{rat, PolyhedralIndicator, RationalPoint, Weight};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random integer-generator indicator guaranteed convenient: one generator
/// per axis with value in `1..=max_coord`, plus up to `max_extra` extra
/// points in `[0, max_coord]^n` (origin excluded).
pub fn random_convenient_indicator(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_coord: i64,
    max_extra: usize,
) -> PolyhedralIndicator {
    let mut points = Vec::new();
    for k in 0..n {
        let mut coords = vec![0i64; n];
        coords[k] = rng.gen_range(1..=max_coord);
        points.push(RationalPoint::from_ints(&coords));
    }
    let extra = rng.gen_range(0..=max_extra);
    for _ in 0..extra {
        let coords: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=max_coord)).collect();
        if coords.iter().all(|&c| c == 0) {
            continue;
        }
        points.push(RationalPoint::from_ints(&coords));
    }
    PolyhedralIndicator::from_support(&points, n).expect("valid random support")
}

/// Random indicator that may or may not be convenient.
pub fn random_indicator(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_coord: i64,
    max_points: usize,
) -> PolyhedralIndicator {
    let count = rng.gen_range(1..=max_points.max(1));
    let mut points = Vec::new();
    for _ in 0..count {
        let coords: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=max_coord)).collect();
        if coords.iter().all(|&c| c == 0) {
            continue;
        }
        points.push(RationalPoint::from_ints(&coords));
    }
    if points.is_empty() {
        let mut coords = vec![0i64; n];
        coords[0] = 1;
        points.push(RationalPoint::from_ints(&coords));
    }
    PolyhedralIndicator::from_support(&points, n).expect("valid random support")
}

/// Random strictly positive rational weight with numerators `1..=12` and
/// denominators `1..=4`.
pub fn random_weight(rng: &mut ChaCha8Rng, n: usize) -> Weight {
    let coords = (0..n)
        .map(|_| rat(rng.gen_range(1..=12), rng.gen_range(1..=4)))
        .collect();
    Weight::new(coords).expect("strictly positive by construction")
}

/// Random strictly negative rational point.
pub fn random_negative_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<resmass_core::Rat> {
    (0..n)
        .map(|_| rat(-rng.gen_range(1..=12), rng.gen_range(1..=4)))
        .collect()
}
