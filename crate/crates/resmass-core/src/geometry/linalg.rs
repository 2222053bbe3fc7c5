//! Small exact linear algebra: determinants, ranks, hyperplane normals and
//! consistent solves, all over arbitrary-precision rationals.

use num::Zero;

use crate::rational::Rat;

/// Determinant by fraction-preserving Gaussian elimination. `m` must be
/// square.
pub fn det(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    if n == 0 {
        return Rat::from_integer(1.into());
    }
    let mut result = Rat::from_integer(1.into());
    for col in 0..n {
        let pivot_row = match (col..n).find(|&r| !m[r][col].is_zero()) {
            Some(r) => r,
            None => return Rat::zero(),
        };
        if pivot_row != col {
            m.swap(pivot_row, col);
            result = -result;
        }
        let pivot = m[col][col].clone();
        result *= &pivot;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &pivot;
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    result
}

/// Row rank by Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Rat>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut r = 0;
    for col in 0..ncols {
        let Some(pivot_row) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot_row);
        let pivot = rows[r][col].clone();
        for i in r + 1..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let factor = &rows[i][col] / &pivot;
            for c in col..ncols {
                let delta = &factor * &rows[r][c];
                rows[i][c] -= delta;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Normal of the hyperplane whose direction space is spanned by the given
/// `n-1` rows of length `n`, computed as the generalized cross product
/// (signed cofactors of the omitted column). Returns `None` when the rows do
/// not span a hyperplane.
pub fn hyperplane_normal(rows: &[Vec<Rat>], n: usize) -> Option<Vec<Rat>> {
    debug_assert_eq!(rows.len() + 1, n);
    let mut normal = Vec::with_capacity(n);
    for omit in 0..n {
        let minor: Vec<Vec<Rat>> = rows
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != omit)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let cof = det(minor);
        normal.push(if omit % 2 == 0 { cof } else { -cof });
    }
    if normal.iter().all(Rat::is_zero) {
        None
    } else {
        Some(normal)
    }
}

/// Solves `basis * x = target` where the columns `basis` are linearly
/// independent and the system is known to be consistent. Returns the
/// coefficient vector `x`.
pub fn solve_consistent(basis: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    let d = basis.len();
    let n = target.len();
    // Augmented n x (d+1) system, reduced to row echelon form.
    let mut aug: Vec<Vec<Rat>> = (0..n)
        .map(|row| {
            let mut r: Vec<Rat> = basis.iter().map(|col| col[row].clone()).collect();
            r.push(target[row].clone());
            r
        })
        .collect();
    let mut pivot_rows = Vec::with_capacity(d);
    let mut row = 0;
    for col in 0..d {
        let Some(p) = (row..n).find(|&i| !aug[i][col].is_zero()) else {
            return None; // columns not independent
        };
        aug.swap(row, p);
        let pivot = aug[row][col].clone();
        for i in 0..n {
            if i == row || aug[i][col].is_zero() {
                continue;
            }
            let factor = &aug[i][col] / &pivot;
            for c in col..=d {
                let delta = &factor * &aug[row][c];
                aug[i][c] -= delta;
            }
        }
        pivot_rows.push(row);
        row += 1;
    }
    // Consistency: remaining rows must have zero RHS.
    for i in row..n {
        if !aug[i][d].is_zero() {
            return None;
        }
    }
    Some(
        (0..d)
            .map(|col| {
                let r = pivot_rows[col];
                &aug[r][d] / &aug[r][col]
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn determinants() {
        assert_eq!(det(vec![]), rat_int(1));
        assert_eq!(det(vec![v(&[3])]), rat_int(3));
        assert_eq!(det(vec![v(&[3, 0]), v(&[0, 2])]), rat_int(6));
        assert_eq!(det(vec![v(&[1, 2]), v(&[2, 4])]), rat_int(0));
        assert_eq!(
            det(vec![v(&[2, 0, 1]), v(&[0, 1, 0]), v(&[1, 0, 1])]),
            rat_int(1)
        );
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(vec![v(&[1, 2]), v(&[2, 4])]), 1);
        assert_eq!(rank(vec![v(&[1, 0]), v(&[0, 1])]), 2);
        assert_eq!(rank(vec![v(&[0, 0])]), 0);
    }

    #[test]
    fn normals() {
        // Hyperplane through (2,0) and (0,1): direction (-2,1), normal (1,2).
        let n = hyperplane_normal(&[v(&[-2, 1])], 2).unwrap();
        assert_eq!(n, v(&[1, 2]));
        // Degenerate: zero direction row.
        assert!(hyperplane_normal(&[v(&[0, 0])], 2).is_none());
        // Empty row set in dimension 1 yields the unit normal.
        assert_eq!(hyperplane_normal(&[], 1).unwrap(), v(&[1]));
    }

    #[test]
    fn consistent_solve() {
        let basis = vec![v(&[1, 0, 1]), v(&[0, 1, 1])];
        let x = solve_consistent(&basis, &v(&[2, 3, 5])).unwrap();
        assert_eq!(x, vec![rat_int(2), rat_int(3)]);
        let x = solve_consistent(&basis, &[rat(1, 2), rat_int(0), rat(1, 2)]).unwrap();
        assert_eq!(x, vec![rat(1, 2), rat_int(0)]);
        // Inconsistent target.
        assert!(solve_consistent(&basis, &v(&[2, 3, 6])).is_none());
    }
}
