//! Newton polyhedra: `conv(points) + R_+^n` with exact vertices and a
//! complete facet list.
//!
//! Facets are found by exhaustive hyperplane enumeration: every facet of the
//! polyhedron is the affine hull of some of its vertices together with some
//! coordinate recession directions, so trying all (vertex subset, axis
//! subset) combinations of total size `n` and keeping the supporting ones is
//! complete. O(|V|^n) is perfectly fine at the intended scale (|V| <= ~30,
//! n <= 4) and keeps every test exact.

use std::collections::{BTreeMap, BTreeSet};

use num::{Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rat;

use super::linalg::{hyperplane_normal, rank};
use super::lp::orthant_hull_contains;
use super::point::RationalPoint;

/// One supporting hyperplane `<normal, x> >= offset` of the polyhedron,
/// touching it in a face of dimension `n-1`.
///
/// Normals are scaled to coprime integers; a facet is compact exactly when
/// its normal is strictly positive.
#[derive(Clone, Debug)]
pub struct Facet {
    normal: RationalPoint,
    offset: Rat,
    vertex_indices: Vec<usize>,
    compact: bool,
}

impl Facet {
    pub fn normal(&self) -> &RationalPoint {
        &self.normal
    }

    pub fn offset(&self) -> &Rat {
        &self.offset
    }

    /// Indices (into the complex's vertex list) of the vertices lying on
    /// this facet.
    pub fn vertex_indices(&self) -> &[usize] {
        &self.vertex_indices
    }

    pub fn is_compact(&self) -> bool {
        self.compact
    }
}

/// The Newton polyhedron of a support set: vertices and facets of
/// `conv(points) + R_+^n`.
#[derive(Clone, Debug)]
pub struct NewtonComplex {
    dimension: usize,
    vertices: Vec<RationalPoint>,
    facets: Vec<Facet>,
}

impl NewtonComplex {
    /// Builds the polyhedron spanned by `points` (all in the closed positive
    /// orthant). Duplicated and non-extreme points are dropped; the facet
    /// list covers both compact and non-compact facets.
    pub fn lower_hull(points: &[RationalPoint], dimension: usize) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptySupport);
        }
        if dimension == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
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

        let vertices = reduce_to_vertices(points);
        let facets = enumerate_facets(&vertices, dimension);
        Ok(Self {
            dimension,
            vertices,
            facets,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn vertices(&self) -> &[RationalPoint] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn compact_facets(&self) -> impl Iterator<Item = &Facet> {
        self.facets.iter().filter(|f| f.is_compact())
    }

    /// Exact membership test by the facet inequalities.
    pub fn contains(&self, point: &RationalPoint) -> Result<bool> {
        if point.dim() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: point.dim(),
            });
        }
        Ok(self
            .facets
            .iter()
            .all(|f| f.normal.dot(point) >= f.offset))
    }

    /// Exact membership test by feasibility of the convex-combination
    /// system; must always agree with [`NewtonComplex::contains`].
    pub fn contains_by_feasibility(&self, point: &RationalPoint) -> Result<bool> {
        if point.dim() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: point.dim(),
            });
        }
        Ok(orthant_hull_contains(&self.vertices, point))
    }

    /// Coordinate of the vertex supported on `axis` alone, if any. For a
    /// reduced vertex set this vertex is unique when it exists.
    pub fn axis_value(&self, axis: usize) -> Option<&Rat> {
        self.vertices
            .iter()
            .find(|v| v.is_axis_only(axis))
            .map(|v| v.get(axis))
    }

    /// First axis carrying no pure-axis vertex, i.e. the witness that the
    /// theta region is unbounded.
    pub fn first_nonconvenient_axis(&self) -> Option<usize> {
        (0..self.dimension).find(|&k| self.axis_value(k).is_none())
    }

    pub fn is_convenient(&self) -> bool {
        self.first_nonconvenient_axis().is_none()
    }
}

/// Keeps exactly the extreme points of `conv(points) + R_+^n`, sorted
/// lexicographically.
fn reduce_to_vertices(points: &[RationalPoint]) -> Vec<RationalPoint> {
    // Dedup, then drop componentwise-dominated points cheaply before the
    // exact feasibility test does the general reduction.
    let unique: Vec<RationalPoint> = points
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let undominated: Vec<RationalPoint> = unique
        .iter()
        .filter(|p| {
            !unique
                .iter()
                .any(|q| q != *p && q.le_componentwise(p))
        })
        .cloned()
        .collect();

    undominated
        .iter()
        .enumerate()
        .filter(|(i, p)| {
            let others: Vec<RationalPoint> = undominated
                .iter()
                .enumerate()
                .filter(|(j, _)| j != i)
                .map(|(_, q)| q.clone())
                .collect();
            others.is_empty() || !orthant_hull_contains(&others, p)
        })
        .map(|(_, p)| p.clone())
        .collect()
}

/// Scales `(normal, offset)` so the normal has coprime integer entries.
fn normalize_hyperplane(normal: &mut Vec<Rat>, offset: &mut Rat) {
    let mut lcm = num::BigInt::one();
    for c in normal.iter() {
        lcm = lcm.lcm(c.denom());
    }
    let mut gcd = num::BigInt::zero();
    for c in normal.iter() {
        gcd = gcd.gcd(&(c.numer() * &lcm / c.denom()));
    }
    if gcd.is_zero() {
        return;
    }
    let scale = Rat::new(lcm, gcd);
    for c in normal.iter_mut() {
        *c *= &scale;
    }
    *offset *= &scale;
}

fn for_each_combination(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if acc.len() == k {
            f(acc);
            return;
        }
        let remaining = k - acc.len();
        for i in start..=n.saturating_sub(remaining) {
            acc.push(i);
            rec(i + 1, n, k, acc, f);
            acc.pop();
        }
    }
    if k > n {
        return;
    }
    rec(0, n, k, &mut Vec::with_capacity(k), f);
}

/// Exhaustive supporting-hyperplane enumeration over (vertex, axis
/// direction) subsets of total size `n`.
fn enumerate_facets(vertices: &[RationalPoint], n: usize) -> Vec<Facet> {
    let mut found: BTreeMap<(Vec<Rat>, Rat), Facet> = BTreeMap::new();

    for axis_count in 0..n {
        let vertex_count = n - axis_count;
        if vertex_count > vertices.len() {
            continue;
        }
        let mut axis_sets = Vec::new();
        for_each_combination(n, axis_count, &mut |axes| axis_sets.push(axes.to_vec()));
        for axes in &axis_sets {
            for_each_combination(vertices.len(), vertex_count, &mut |vs| {
                let base = &vertices[vs[0]];
                let mut rows: Vec<Vec<Rat>> = vs[1..]
                    .iter()
                    .map(|&i| vertices[i].sub(base).into_coords())
                    .collect();
                for &axis in axes {
                    let mut e = vec![Rat::zero(); n];
                    e[axis] = Rat::one();
                    rows.push(e);
                }
                let Some(mut normal) = hyperplane_normal(&rows, n) else {
                    return;
                };
                // The recession cone R_+^n forces supporting normals to be
                // nonnegative; orient accordingly or discard.
                if normal.iter().any(|c| c.is_negative()) {
                    if normal.iter().all(|c| !c.is_positive()) {
                        for c in normal.iter_mut() {
                            *c = -c.clone();
                        }
                    } else {
                        return;
                    }
                }
                let normal_pt = RationalPoint::new(normal.clone());
                let mut offset = normal_pt.dot(base);
                // Supporting from below: every vertex on the >= side.
                let mut on_facet = Vec::new();
                for (i, v) in vertices.iter().enumerate() {
                    let val = normal_pt.dot(v);
                    if val < offset {
                        return;
                    }
                    if val == offset {
                        on_facet.push(i);
                    }
                }
                // Facet check: the touching face must have dimension n-1,
                // counting the recession directions lying inside it.
                let base_idx = on_facet[0];
                let mut span_rows: Vec<Vec<Rat>> = on_facet[1..]
                    .iter()
                    .map(|&i| vertices[i].sub(&vertices[base_idx]).into_coords())
                    .collect();
                for (k, c) in normal.iter().enumerate() {
                    if c.is_zero() {
                        let mut e = vec![Rat::zero(); n];
                        e[k] = Rat::one();
                        span_rows.push(e);
                    }
                }
                if rank(span_rows) != n - 1 {
                    return;
                }
                let mut key_normal = normal.clone();
                normalize_hyperplane(&mut key_normal, &mut offset);
                let compact = key_normal.iter().all(|c| c.is_positive());
                found
                    .entry((key_normal.clone(), offset.clone()))
                    .or_insert_with(|| Facet {
                        normal: RationalPoint::new(key_normal),
                        offset,
                        vertex_indices: on_facet,
                        compact,
                    });
            });
        }
    }

    found.into_values().collect()
}
