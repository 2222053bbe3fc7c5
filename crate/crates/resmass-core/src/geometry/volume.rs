//! Exact volume of the theta region `closure(R_+^n \ hull)` for convenient
//! Newton polyhedra.
//!
//! The region is tiled by the cones from the origin over the compact facets;
//! each facet is triangulated into (n-1)-simplices with vertices drawn from
//! the facet's own vertex set, and each cone contributes |det| / n!.
//! Triangulation is a fan from the lexicographically smallest vertex,
//! recursing on the facet's facial structure, so no general-position
//! assumption is needed.

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{factorial, Rat};

use super::hull::NewtonComplex;
use super::linalg::{det, hyperplane_normal, rank, solve_consistent};
use super::point::RationalPoint;

/// Exact Euclidean and normalized (n! times) volume of the theta region.
#[derive(Clone, Debug, PartialEq)]
pub struct VolumeResult {
    pub volume: Rat,
    pub normalized: Rat,
    pub simplex_count: usize,
}

/// Computes the theta-region volume of a convenient complex.
pub fn theta_volume(complex: &NewtonComplex) -> Result<VolumeResult> {
    if let Some(axis) = complex.first_nonconvenient_axis() {
        return Err(Error::NotConvenient { axis });
    }
    let n = complex.dimension();
    let mut normalized = Rat::zero();
    let mut simplex_count = 0usize;
    for facet in complex.compact_facets() {
        for simplex in triangulate_facet(complex, facet.vertex_indices())? {
            let rows: Vec<Vec<Rat>> = simplex
                .iter()
                .map(|&i| complex.vertices()[i].coords().to_vec())
                .collect();
            let d = det(rows);
            if d.is_zero() {
                return Err(Error::Internal(
                    "degenerate simplex in facet triangulation".into(),
                ));
            }
            normalized += d.abs();
            simplex_count += 1;
        }
    }
    let volume = &normalized / factorial(n);
    Ok(VolumeResult {
        volume,
        normalized,
        simplex_count,
    })
}

/// Splits a compact facet into (n-1)-simplices, returned as index lists
/// into the complex's vertex set.
fn triangulate_facet(complex: &NewtonComplex, facet_vertices: &[usize]) -> Result<Vec<Vec<usize>>> {
    let n = complex.dimension();
    if facet_vertices.len() < n {
        return Err(Error::Internal("compact facet with too few vertices".into()));
    }
    if facet_vertices.len() == n {
        return Ok(vec![facet_vertices.to_vec()]);
    }
    let points: Vec<&RationalPoint> = facet_vertices
        .iter()
        .map(|&i| &complex.vertices()[i])
        .collect();
    let local = to_affine_coordinates(&points, n - 1)?;
    let simplices = fan_triangulate(&local, n - 1)?;
    Ok(simplices
        .into_iter()
        .map(|s| s.into_iter().map(|i| facet_vertices[i]).collect())
        .collect())
}

/// Rewrites points of a d-dimensional polytope embedded in R^n in exact
/// affine coordinates, making it full-dimensional in R^d.
fn to_affine_coordinates(points: &[&RationalPoint], d: usize) -> Result<Vec<Vec<Rat>>> {
    let base = points
        .iter()
        .min()
        .ok_or_else(|| Error::Internal("empty facet".into()))?;
    // Greedy rank-extending basis from the difference vectors.
    let mut basis: Vec<Vec<Rat>> = Vec::with_capacity(d);
    for p in points {
        if basis.len() == d {
            break;
        }
        let diff = p.sub(base).into_coords();
        let mut candidate = basis.clone();
        candidate.push(diff.clone());
        if rank(candidate) == basis.len() + 1 {
            basis.push(diff);
        }
    }
    if basis.len() != d {
        return Err(Error::Internal(format!(
            "facet has affine dimension {} instead of {}",
            basis.len(),
            d
        )));
    }
    points
        .iter()
        .map(|p| {
            solve_consistent(&basis, &p.sub(base).into_coords())
                .ok_or_else(|| Error::Internal("facet point outside its affine hull".into()))
        })
        .collect()
}

/// Fan triangulation of a full-dimensional polytope in R^d given by its
/// extreme points: cone the lexicographically smallest vertex over the
/// triangulations of the facets avoiding it.
fn fan_triangulate(points: &[Vec<Rat>], d: usize) -> Result<Vec<Vec<usize>>> {
    if points.len() == d + 1 {
        return Ok(vec![(0..=d).collect()]);
    }
    let apex = (0..points.len())
        .min_by(|&a, &b| points[a].cmp(&points[b]))
        .expect("nonempty polytope");
    let mut simplices = Vec::new();
    for face in polytope_faces(points, d) {
        if face.contains(&apex) {
            continue;
        }
        if d == 1 {
            // Faces of a segment are single points.
            simplices.push(vec![apex, face[0]]);
            continue;
        }
        let face_points: Vec<Vec<Rat>> = face.iter().map(|&i| points[i].clone()).collect();
        let face_refs: Vec<RationalPoint> = face_points
            .iter()
            .map(|c| RationalPoint::new(c.clone()))
            .collect();
        let refs: Vec<&RationalPoint> = face_refs.iter().collect();
        let local = to_affine_coordinates(&refs, d - 1)?;
        for sub in fan_triangulate(&local, d - 1)? {
            let mut simplex = vec![apex];
            simplex.extend(sub.into_iter().map(|i| face[i]));
            simplices.push(simplex);
        }
    }
    Ok(simplices)
}

/// Vertex index sets of the (d-1)-faces of a full-dimensional polytope in
/// R^d, by supporting-hyperplane enumeration over d-subsets.
fn polytope_faces(points: &[Vec<Rat>], d: usize) -> Vec<Vec<usize>> {
    use std::collections::BTreeSet;
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    let idx: Vec<usize> = (0..points.len()).collect();
    combinations(&idx, d, &mut |subset| {
        let base = &points[subset[0]];
        let rows: Vec<Vec<Rat>> = subset[1..]
            .iter()
            .map(|&i| sub_vec(&points[i], base))
            .collect();
        let Some(normal) = hyperplane_normal(&rows, d) else {
            return;
        };
        let offset: Rat = dot_vec(&normal, base);
        let mut below = false;
        let mut above = false;
        let mut on: Vec<usize> = Vec::new();
        for (i, p) in points.iter().enumerate() {
            let v = dot_vec(&normal, p);
            if v < offset {
                below = true;
            } else if v > offset {
                above = true;
            } else {
                on.push(i);
            }
            if below && above {
                return;
            }
        }
        // Supporting hyperplane; keep it when the touching set spans d-1.
        let span: Vec<Vec<Rat>> = on[1..]
            .iter()
            .map(|&i| sub_vec(&points[i], &points[on[0]]))
            .collect();
        if rank(span) == d - 1 {
            faces.insert(on);
        }
    });
    faces.into_iter().collect()
}

fn sub_vec(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dot_vec(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn combinations(items: &[usize], k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(
        items: &[usize],
        start: usize,
        k: usize,
        acc: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]),
    ) {
        if acc.len() == k {
            f(acc);
            return;
        }
        let remaining = k - acc.len();
        for i in start..=items.len().saturating_sub(remaining) {
            acc.push(items[i]);
            rec(items, i + 1, k, acc, f);
            acc.pop();
        }
    }
    if k > items.len() {
        return;
    }
    rec(items, 0, k, &mut Vec::with_capacity(k), f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    fn hull(rows: &[&[i64]], n: usize) -> NewtonComplex {
        let pts: Vec<RationalPoint> = rows.iter().map(|r| RationalPoint::from_ints(r)).collect();
        NewtonComplex::lower_hull(&pts, n).unwrap()
    }

    #[test]
    fn weighted_monomial_pair() {
        let v = theta_volume(&hull(&[&[3, 0], &[0, 2]], 2)).unwrap();
        assert_eq!(v.volume, rat_int(3));
        assert_eq!(v.normalized, rat_int(6));
        assert_eq!(v.simplex_count, 1);
    }

    #[test]
    fn paper_mapping_support() {
        let v = theta_volume(&hull(&[&[2, 0], &[0, 1], &[0, 3]], 2)).unwrap();
        assert_eq!(v.normalized, rat_int(2));
    }

    #[test]
    fn unit_corner_simplex() {
        for n in 1..=4usize {
            let rows: Vec<Vec<i64>> = (0..n)
                .map(|k| (0..n).map(|j| i64::from(j == k)).collect())
                .collect();
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let v = theta_volume(&hull(&refs, n)).unwrap();
            assert_eq!(v.normalized, rat_int(1), "dimension {n}");
        }
    }

    #[test]
    fn non_convenient_input_errors() {
        let err = theta_volume(&hull(&[&[0, 3]], 2)).unwrap_err();
        assert!(matches!(err, Error::NotConvenient { axis: 0 }));
        assert!(err.to_string().contains("theta region unbounded"));
    }

    #[test]
    fn quadrilateral_facet_needs_a_fan() {
        // (3,0,0),(0,3,0),(2,0,1),(0,2,1) are the corners of a genuine
        // quadrilateral facet on x+y+z = 3; (0,0,5) closes the third axis
        // and adds the triangle facet 2x+2y+z = 5. Cone determinants:
        // 9 + 6 over the fan of the quadrilateral, 20 over the triangle.
        let v = theta_volume(&hull(
            &[&[3, 0, 0], &[0, 3, 0], &[2, 0, 1], &[0, 2, 1], &[0, 0, 5]],
            3,
        ))
        .unwrap();
        assert_eq!(v.normalized, rat_int(35));
        assert_eq!(v.simplex_count, 3);
    }

    #[test]
    fn box_complement() {
        // Hull of {(1,0),(0,2)}: theta = region under the segment.
        let v = theta_volume(&hull(&[&[1, 0], &[0, 2]], 2)).unwrap();
        assert_eq!(v.normalized, rat_int(2));
    }
}
