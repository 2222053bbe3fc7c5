use num::{Signed, Zero};

use crate::rational::{rat_int, to_f64, Rat};

/// A point of exponent space with exact rational coordinates.
///
/// Coordinates are unconstrained at this level; the hull and indicator
/// constructors enforce nonnegativity where the geometry requires it.
/// Ordering is lexicographic, which the kernel uses for deterministic
/// tie-breaking.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RationalPoint {
    coords: Vec<Rat>,
}

impl RationalPoint {
    pub fn new(coords: Vec<Rat>) -> Self {
        Self { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self {
            coords: coords.iter().map(|&c| rat_int(c)).collect(),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            coords: vec![Rat::zero(); dim],
        }
    }

    /// Standard basis vector `e_axis`.
    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut coords = vec![Rat::zero(); dim];
        coords[axis] = rat_int(1);
        Self { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn get(&self, k: usize) -> &Rat {
        &self.coords[k]
    }

    pub fn dot(&self, other: &Self) -> Rat {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Self {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Self {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self {
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative())
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.coords.iter().all(|c| c.is_positive())
    }

    /// Componentwise `self <= other`.
    pub fn le_componentwise(&self, other: &Self) -> bool {
        self.coords
            .iter()
            .zip(&other.coords)
            .all(|(a, b)| a <= b)
    }

    /// True when every coordinate off `axis` vanishes (the origin qualifies
    /// for every axis).
    pub fn is_axis_only(&self, axis: usize) -> bool {
        self.coords
            .iter()
            .enumerate()
            .all(|(j, c)| j == axis || c.is_zero())
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.coords.iter().map(to_f64).collect()
    }

    pub fn into_coords(self) -> Vec<Rat> {
        self.coords
    }
}

impl std::fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
