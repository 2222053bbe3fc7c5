//! Exact feasibility test for membership in `conv(V) + R_+^n`.
//!
//! Decides whether a query point `q` satisfies
//!
//! ```text
//! exists lambda >= 0:  sum lambda_i = 1,  sum lambda_i v_i <= q  (componentwise)
//! ```
//!
//! by a phase-1 simplex over arbitrary-precision rationals with Bland's
//! rule, so the test is exact and always terminates. Problem sizes here are
//! tiny (tens of points, dimension at most ~4), so a dense tableau is fine.

use num::{Signed, Zero};

use crate::rational::Rat;

use super::point::RationalPoint;

/// True iff `q` lies in `conv(points) + R_+^n`. `points` must all be
/// componentwise nonnegative and of the same dimension as `q`.
pub fn orthant_hull_contains(points: &[RationalPoint], q: &RationalPoint) -> bool {
    let m = points.len();
    let n = q.dim();
    if m == 0 {
        return false;
    }
    // All combination values are nonnegative, so a negative query
    // coordinate is immediately infeasible.
    if q.coords().iter().any(|c| c.is_negative()) {
        return false;
    }

    // Columns: lambda_0..lambda_{m-1}, slack_0..slack_{n-1}, artificial.
    // Rows 0..n-1: sum lambda_i v_i + s = q  (slack basic, rhs >= 0).
    // Row n:       sum lambda_i + artificial = 1.
    let cols = m + n + 1;
    let art = m + n;
    let mut a: Vec<Vec<Rat>> = vec![vec![Rat::zero(); cols]; n + 1];
    let mut b: Vec<Rat> = Vec::with_capacity(n + 1);
    for row in 0..n {
        for (i, p) in points.iter().enumerate() {
            a[row][i] = p.get(row).clone();
        }
        a[row][m + row] = Rat::from_integer(1.into());
        b.push(q.get(row).clone());
    }
    for i in 0..m {
        a[n][i] = Rat::from_integer(1.into());
    }
    a[n][art] = Rat::from_integer(1.into());
    b.push(Rat::from_integer(1.into()));

    let mut basis: Vec<usize> = (0..n).map(|row| m + row).collect();
    basis.push(art);

    // Phase-1 cost row: minimize the artificial variable. Price out the
    // basic artificial: reduced costs = -row n, objective = -b[n].
    let mut cost: Vec<Rat> = (0..cols).map(|c| -a[n][c].clone()).collect();
    cost[art] = Rat::zero();
    let mut objective = -b[n].clone();

    loop {
        // Bland's rule: smallest-index column with negative reduced cost.
        let Some(enter) = (0..cols).find(|&c| cost[c].is_negative()) else {
            break;
        };
        // Ratio test, ties broken by smallest basis variable index.
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for row in 0..=n {
            if !a[row][enter].is_positive() {
                continue;
            }
            let ratio = &b[row] / &a[row][enter];
            let better = match &best {
                None => true,
                Some(cur) => {
                    ratio < *cur || (ratio == *cur && basis[row] < basis[leave.unwrap()])
                }
            };
            if better {
                best = Some(ratio);
                leave = Some(row);
            }
        }
        let Some(lr) = leave else {
            // Unbounded phase-1 cannot happen (the objective is bounded
            // below by zero); bail out defensively as infeasible.
            return false;
        };

        // Pivot on (lr, enter).
        let pivot = a[lr][enter].clone();
        for c in 0..cols {
            a[lr][c] /= &pivot;
        }
        b[lr] /= &pivot;
        for row in 0..=n {
            if row == lr || a[row][enter].is_zero() {
                continue;
            }
            let factor = a[row][enter].clone();
            for c in 0..cols {
                let delta = &factor * &a[lr][c];
                a[row][c] -= delta;
            }
            let delta = &factor * &b[lr];
            b[row] -= delta;
        }
        if !cost[enter].is_zero() {
            let factor = cost[enter].clone();
            for c in 0..cols {
                let delta = &factor * &a[lr][c];
                cost[c] -= delta;
            }
            let delta = &factor * &b[lr];
            objective -= delta;
        }
        basis[lr] = enter;
    }

    // Feasible iff the artificial variable ended at value zero.
    let art_value = basis
        .iter()
        .position(|&v| v == art)
        .map(|row| b[row].clone())
        .unwrap_or_else(Rat::zero);
    debug_assert!(objective <= Rat::zero() || art_value.is_zero() == objective.is_zero());
    art_value.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(xs: &[i64]) -> RationalPoint {
        RationalPoint::from_ints(xs)
    }

    #[test]
    fn midpoint_and_recession() {
        let pts = vec![pt(&[2, 0]), pt(&[0, 2])];
        assert!(orthant_hull_contains(&pts, &pt(&[1, 1])));
        assert!(orthant_hull_contains(&pts, &pt(&[3, 0])));
        assert!(orthant_hull_contains(&pts, &pt(&[5, 7])));
        assert!(!orthant_hull_contains(&pts, &pt(&[0, 0])));
    }

    #[test]
    fn strictly_below_the_diagonal_is_outside() {
        use crate::rational::rat;
        let pts = vec![pt(&[2, 0]), pt(&[0, 2])];
        let q = RationalPoint::new(vec![rat(9, 10), rat(9, 10)]);
        assert!(!orthant_hull_contains(&pts, &q));
    }

    #[test]
    fn negative_coordinates_rejected() {
        let pts = vec![pt(&[0, 0])];
        assert!(!orthant_hull_contains(&pts, &pt(&[1, -1])));
    }

    #[test]
    fn single_point_cone() {
        let pts = vec![pt(&[1, 1])];
        assert!(orthant_hull_contains(&pts, &pt(&[1, 1])));
        assert!(orthant_hull_contains(&pts, &pt(&[2, 1])));
        assert!(!orthant_hull_contains(&pts, &pt(&[0, 5])));
    }
}
