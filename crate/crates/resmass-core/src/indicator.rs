//! Polyhedral indicators and their algebra.
//!
//! An indicator here is the plurisubharmonic function
//! `Psi(z) = max_p sum_k p_k log|z_k|` over a finite generator set `p` in
//! the closed positive orthant; in logarithmic coordinates its convex image
//! is the max-affine function `psi(t) = max_p <t, p>` on the negative
//! orthant. Directional Lelong numbers, sums, suprema, scalings and the
//! comparison inequalities are all exact rational computations on the
//! generator set.

use std::collections::BTreeSet;

use num::{Signed, Zero};
use serde::de::Error as DeError;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::RationalPoint;
use crate::rational::{parse_rat, rat_int, to_f64, Rat, RatPair, RatRepr};

/// A strictly positive exact rational weight vector (a direction for
/// Lelong numbers).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weight {
    coords: Vec<Rat>,
}

impl Weight {
    pub fn new(coords: Vec<Rat>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidWeight("weight must be nonempty".into()));
        }
        if let Some(k) = coords.iter().position(|c| !c.is_positive()) {
            return Err(Error::InvalidWeight(format!(
                "coordinate {k} is not strictly positive"
            )));
        }
        Ok(Self { coords })
    }

    pub fn uniform(dim: usize) -> Self {
        Self {
            coords: vec![rat_int(1); dim],
        }
    }

    /// Parses a comma-separated list of positive rationals, e.g. `"1,3/2"`.
    pub fn parse(text: &str) -> Result<Self> {
        let coords = text
            .split(',')
            .map(parse_rat)
            .collect::<Result<Vec<_>>>()?;
        Self::new(coords)
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

    pub fn scale(&self, c: &Rat) -> Result<Self> {
        Self::new(self.coords.iter().map(|a| a * c).collect())
    }

    pub fn as_point(&self) -> RationalPoint {
        RationalPoint::new(self.coords.clone())
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.coords.iter().map(to_f64).collect()
    }

    pub fn into_coords(self) -> Vec<Rat> {
        self.coords
    }
}

impl std::fmt::Display for Weight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Per-axis multiplicities: the minimal pure-axis generator value on each
/// axis, or `None` when the axis carries no pure-axis generator (the
/// indicator is then unbounded along that axis and not convenient).
#[derive(Clone, Debug, PartialEq)]
pub struct AxisMultiplicities {
    values: Vec<Option<Rat>>,
}

impl AxisMultiplicities {
    pub fn values(&self) -> &[Option<Rat>] {
        &self.values
    }

    pub fn get(&self, k: usize) -> Option<&Rat> {
        self.values[k].as_ref()
    }

    pub fn is_convenient(&self) -> bool {
        self.values.iter().all(Option::is_some)
    }

    pub fn first_unbounded_axis(&self) -> Option<usize> {
        self.values.iter().position(Option::is_none)
    }

    /// Product of the multiplicities; requires convenience.
    pub fn product(&self) -> Result<Rat> {
        let mut acc = rat_int(1);
        for (axis, v) in self.values.iter().enumerate() {
            match v {
                Some(r) => acc *= r,
                None => return Err(Error::NotConvenient { axis }),
            }
        }
        Ok(acc)
    }
}

/// A finitely generated indicator, stored as its deduplicated generator set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedralIndicator {
    dimension: usize,
    generators: Vec<RationalPoint>,
}

impl PolyhedralIndicator {
    /// Builds the indicator generated by a support set in the closed
    /// positive orthant. Duplicates are dropped; hull-redundant generators
    /// are kept (reduction happens lazily in the hull).
    pub fn from_support(points: &[RationalPoint], dimension: usize) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptySupport);
        }
        for (index, p) in points.iter().enumerate() {
            if p.dim() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    got: p.dim(),
                });
            }
            if let Some(coord) = p.coords().iter().position(|c| c.is_negative()) {
                return Err(Error::NotInPositiveOrthant { index, coord });
            }
        }
        let generators: Vec<RationalPoint> = points
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        Ok(Self {
            dimension,
            generators,
        })
    }

    pub fn from_int_support(rows: &[&[i64]], dimension: usize) -> Result<Self> {
        let pts: Vec<RationalPoint> = rows.iter().map(|r| RationalPoint::from_ints(r)).collect();
        Self::from_support(&pts, dimension)
    }

    /// The indicator `sup_k log|z_k|` whose generators are the unit
    /// vectors; scaling it by `N` gives the regularizers used for
    /// non-convenient mixed masses.
    pub fn unit_vectors(dimension: usize) -> Self {
        let generators = (0..dimension)
            .map(|k| RationalPoint::unit(dimension, k))
            .collect();
        Self {
            dimension,
            generators,
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn generators(&self) -> &[RationalPoint] {
        &self.generators
    }

    /// Convex image `psi(t) = max_p <t, p>` at a rational point of the
    /// closed negative orthant; exact.
    pub fn evaluate(&self, t: &[Rat]) -> Result<Rat> {
        if t.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: t.len(),
            });
        }
        if let Some(k) = t.iter().position(|c| c.is_positive()) {
            return Err(Error::InvalidArgument(format!(
                "evaluation point must lie in the closed negative orthant; coordinate {k} is positive"
            )));
        }
        let point = RationalPoint::new(t.to_vec());
        Ok(self
            .generators
            .iter()
            .map(|p| p.dot(&point))
            .max()
            .expect("nonempty generator set"))
    }

    /// Float evaluation of the convex image, tolerating -inf coordinates
    /// with the convention that a zero exponent contributes nothing.
    pub fn evaluate_f64(&self, t: &[f64]) -> f64 {
        let mut best = f64::NEG_INFINITY;
        for p in &self.generators {
            let mut acc = 0.0f64;
            for (pk, tk) in p.coords().iter().zip(t) {
                if pk.is_zero() {
                    continue;
                }
                acc += to_f64(pk) * tk;
            }
            if acc > best {
                best = acc;
            }
        }
        best
    }

    /// Directional Lelong number `nu(Psi, 0, a) = min_p <a, p>`; exact.
    pub fn directional_lelong(&self, a: &Weight) -> Result<Rat> {
        if a.dim() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: a.dim(),
            });
        }
        let point = a.as_point();
        Ok(self
            .generators
            .iter()
            .map(|p| p.dot(&point))
            .min()
            .expect("nonempty generator set"))
    }

    /// Lelong number: the directional value at the uniform weight.
    pub fn lelong_number(&self) -> Rat {
        self.directional_lelong(&Weight::uniform(self.dimension))
            .expect("uniform weight matches dimension")
    }

    pub fn axis_multiplicities(&self) -> AxisMultiplicities {
        let values = (0..self.dimension)
            .map(|k| {
                self.generators
                    .iter()
                    .filter(|p| p.is_axis_only(k))
                    .map(|p| p.get(k).clone())
                    .min()
            })
            .collect();
        AxisMultiplicities { values }
    }

    pub fn is_convenient(&self) -> bool {
        self.axis_multiplicities().is_convenient()
    }

    /// Pointwise sum: Minkowski sum of the generator sets.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        if other.dimension != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: other.dimension,
            });
        }
        let mut generators = BTreeSet::new();
        for p in &self.generators {
            for q in &other.generators {
                generators.insert(p.add(q));
            }
        }
        Ok(Self {
            dimension: self.dimension,
            generators: generators.into_iter().collect(),
        })
    }

    /// Pointwise supremum: union of the generator sets.
    pub fn sup(&self, other: &Self) -> Result<Self> {
        if other.dimension != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: other.dimension,
            });
        }
        let generators: BTreeSet<RationalPoint> = self
            .generators
            .iter()
            .chain(&other.generators)
            .cloned()
            .collect();
        Ok(Self {
            dimension: self.dimension,
            generators: generators.into_iter().collect(),
        })
    }

    /// Scaling by a positive rational: scales every generator.
    pub fn scale(&self, c: &Rat) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::InvalidArgument(
                "scaling factor must be strictly positive".into(),
            ));
        }
        Ok(Self {
            dimension: self.dimension,
            generators: self.generators.iter().map(|p| p.scale(c)).collect(),
        })
    }

    /// Weight-comparison inequality `nu(a) >= nu(b) * min_k(a_k / b_k)`,
    /// returned with both sides for auditing. Holds for every polyhedral
    /// indicator.
    pub fn weight_comparison_bound(&self, a: &Weight, b: &Weight) -> Result<ComparisonBound> {
        let lhs = self.directional_lelong(a)?;
        let nu_b = self.directional_lelong(b)?;
        let min_ratio = a
            .coords()
            .iter()
            .zip(b.coords())
            .map(|(ak, bk)| ak / bk)
            .min()
            .expect("nonempty weight");
        let rhs = nu_b * min_ratio;
        let holds = lhs >= rhs;
        Ok(ComparisonBound { lhs, rhs, holds })
    }

    /// Checks `psi(t) <= |psi(t0)| * max_k(t_k / |t0_k|)` for strictly
    /// negative `t`, `t0`; must always hold.
    pub fn phi_comparison_check(&self, t: &[Rat], t0: &[Rat]) -> Result<bool> {
        if let Some(k) = t0.iter().position(|c| c.is_zero()) {
            return Err(Error::InvalidArgument(format!(
                "comparison base point has zero coordinate {k}"
            )));
        }
        if t.iter().any(|c| !c.is_negative()) || t0.iter().any(|c| !c.is_negative()) {
            return Err(Error::InvalidArgument(
                "comparison points must be strictly negative".into(),
            ));
        }
        let lhs = self.evaluate(t)?;
        let psi_t0 = self.evaluate(t0)?;
        let phi = t
            .iter()
            .zip(t0)
            .map(|(tk, t0k)| tk / t0k.abs())
            .max()
            .expect("nonempty point");
        let rhs = psi_t0.abs() * phi;
        Ok(lhs <= rhs)
    }
}

/// Both sides of a comparison inequality plus the verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonBound {
    pub lhs: Rat,
    pub rhs: Rat,
    pub holds: bool,
}

impl Serialize for PolyhedralIndicator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("PolyhedralIndicator", 2)?;
        st.serialize_field("dimension", &self.dimension)?;
        let generators: Vec<Vec<RatPair>> = self
            .generators
            .iter()
            .map(|p| p.coords().iter().map(RatPair::from).collect())
            .collect();
        st.serialize_field("generators", &generators)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for PolyhedralIndicator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Doc {
            dimension: usize,
            generators: Vec<Vec<RatRepr>>,
        }
        let doc = Doc::deserialize(deserializer)?;
        let points = doc
            .generators
            .iter()
            .map(|row| {
                row.iter()
                    .map(|r| r.to_rat())
                    .collect::<Result<Vec<Rat>>>()
                    .map(RationalPoint::new)
            })
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        PolyhedralIndicator::from_support(&points, doc.dimension).map_err(D::Error::custom)
    }
}
