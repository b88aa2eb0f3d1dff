//! Phase-one simplex over the rationals with Bland's anti-cycling rule.

use num_traits::{Signed, Zero};

use crate::Rational;

/// Finds `x >= 0` with `a x = b`, or `None` if the system is infeasible.
///
/// Runs phase one with one artificial column per row, starting from the
/// artificial basis. Entering and leaving variables are chosen by Bland's
/// rule (smallest index), so the returned basic feasible solution is a
/// deterministic function of the row and column order of the input.
pub fn find_feasible(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(a.len(), b.len());
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let width = cols + rows;

    // tableau rows: [original | artificial | rhs], with rhs made nonnegative
    let mut tab: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (row, rhs))| {
            let flip = rhs.is_negative();
            let mut t: Vec<Rational> =
                row.iter().map(|v| if flip { -v.clone() } else { v.clone() }).collect();
            t.extend((0..rows).map(|k| if k == i { Rational::from_integer(1.into()) } else { Rational::zero() }));
            t.push(if flip { -rhs.clone() } else { rhs.clone() });
            t
        })
        .collect();
    let mut basis: Vec<usize> = (cols..width).collect();

    // reduced costs of the phase-one objective (sum of artificials)
    let mut cost: Vec<Rational> = (0..=width)
        .map(|j| {
            if j >= cols && j < width {
                Rational::zero()
            } else {
                -tab.iter().map(|r| &r[j]).sum::<Rational>()
            }
        })
        .collect();

    while let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) {
        let leave = (0..rows)
            .filter(|&i| tab[i][enter].is_positive())
            .map(|i| (&tab[i][width] / &tab[i][enter], basis[i], i))
            .min_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)))
            .map(|(_, _, i)| i);
        // phase one is bounded below by zero, so a ratio test always succeeds
        let leave = leave.expect("phase-one objective unbounded");
        pivot(&mut tab, &mut cost, leave, enter);
        basis[leave] = enter;
    }

    // -cost[width] is the residual sum of artificials
    if !cost[width].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &var) in basis.iter().enumerate() {
        if var < cols {
            x[var] = tab[i][width].clone();
        }
    }
    Some(x)
}

fn pivot(tab: &mut [Vec<Rational>], cost: &mut [Rational], row: usize, col: usize) {
    let lead = tab[row][col].clone();
    for v in tab[row].iter_mut() {
        *v /= &lead;
    }
    let pivot_row = tab[row].clone();
    for (i, r) in tab.iter_mut().enumerate() {
        if i != row && !r[col].is_zero() {
            let factor = r[col].clone();
            for (v, p) in r.iter_mut().zip(&pivot_row) {
                *v -= &factor * p;
            }
        }
    }
    if !cost[col].is_zero() {
        let factor = cost[col].clone();
        for (v, p) in cost.iter_mut().zip(&pivot_row) {
            *v -= &factor * p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::mat_vec;
    use crate::rational::{int, ratio};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn feasible_system() {
        let a = m(&[&[1, 1, 1], &[1, -1, 0]]);
        let b = vec![int(1), ratio(1, 4)];
        let x = find_feasible(&a, &b).unwrap();
        assert!(x.iter().all(|v| !v.is_negative()));
        assert_eq!(mat_vec(&a, &x), b);
    }

    #[test]
    fn infeasible_system() {
        // x + y = 1 and x + y = 2
        let a = m(&[&[1, 1], &[1, 1]]);
        assert_eq!(find_feasible(&a, &[int(1), int(2)]), None);
        // x - y = -1 has no solution with y = 0 forced by y = 0 row
        let a = m(&[&[1, -1], &[0, 1]]);
        assert_eq!(find_feasible(&a, &[int(-1), int(0)]), None);
    }

    #[test]
    fn negative_rhs_is_normalized() {
        let a = m(&[&[-1, 0], &[0, 1]]);
        let x = find_feasible(&a, &[int(-3), int(2)]).unwrap();
        assert_eq!(x, vec![int(3), int(2)]);
    }

    #[test]
    fn degenerate_redundant_rows() {
        // duplicated constraint leaves an artificial basic at zero
        let a = m(&[&[1, 1, 0], &[1, 1, 0], &[0, 1, 1]]);
        let b = vec![int(1), int(1), int(1)];
        let x = find_feasible(&a, &b).unwrap();
        assert_eq!(mat_vec(&a, &x), b);
        assert!(x.iter().all(|v| !v.is_negative()));
    }

    #[test]
    fn deterministic() {
        let a = m(&[&[1, 1, 1, 1], &[1, 2, 3, 4]]);
        let b = vec![int(1), ratio(5, 2)];
        assert_eq!(find_feasible(&a, &b), find_feasible(&a, &b));
    }
}
