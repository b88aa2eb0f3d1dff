//! Gaussian elimination over the rationals.

use num_traits::Zero;

use crate::Rational;

/// Dense row-major matrix.
pub type Matrix = Vec<Vec<Rational>>;

/// Reduces `m` in place to reduced row echelon form and returns the pivot
/// columns. Only the first `cols` columns are used for pivoting.
fn rref(m: &mut Matrix, cols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(sel) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, sel);
        let lead = m[r][c].clone();
        for v in m[r].iter_mut() {
            *v /= &lead;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in 0..m[i].len() {
                    let delta = &factor * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Rational>]) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut work = m.to_vec();
    rref(&mut work, cols).len()
}

/// Solves `a x = b`, returning `Some(x)` only when the system is consistent
/// and the solution is unique.
pub fn solve_unique(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(a.len(), b.len());
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, cols);
    if pivots.len() != cols {
        return None;
    }
    // an all-zero coefficient row with a nonzero right-hand side is inconsistent
    if aug[pivots.len()..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    Some((0..cols).map(|i| aug[i][cols].clone()).collect())
}

/// Restriction of `m` to the given columns.
pub fn select_columns(m: &[Vec<Rational>], cols: &[usize]) -> Matrix {
    m.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect()
}

pub fn mat_vec(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&m(&[&[1, 2, 3], &[0, 1, 1], &[1, 3, 4]])), 2);
        assert_eq!(rank(&m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(&m(&[&[2, 0, 1], &[0, 3, 0], &[0, 0, 5]])), 3);
    }

    #[test]
    fn unique_solution() {
        let a = m(&[&[2, 1], &[1, 3], &[3, 4]]);
        let b = vec![int(3), int(5), int(8)];
        assert_eq!(solve_unique(&a, &b), Some(vec![ratio(4, 5), ratio(7, 5)]));
    }

    #[test]
    fn inconsistent_or_underdetermined() {
        let a = m(&[&[1, 1], &[1, 1]]);
        assert_eq!(solve_unique(&a, &[int(1), int(2)]), None);
        assert_eq!(solve_unique(&a, &[int(1), int(1)]), None);
    }
}
