//! Exact linear solving over the parameter field.
//!
//! Rows are cleared to polynomial entries, forward elimination is the
//! fraction-free Bareiss scheme (every update divides exactly by the previous
//! pivot, so entries stay determinant-sized), and back substitution happens
//! in the rational function field. Free variables are set to zero.

use num::Zero;

use crate::error::{Error, Result};
use crate::field::poly::{poly_gcd, Polynomial};
use crate::field::ratfun::RationalFunction;

/// Solve M x = rhs exactly; returns one solution of the affine solution set
/// (free variables zero) or `Error::NoSolution`.
pub fn solve_linear_system(
    matrix: &[Vec<RationalFunction>],
    rhs: &[RationalFunction],
) -> Result<Vec<RationalFunction>> {
    let rows = matrix.len();
    assert_eq!(rows, rhs.len(), "matrix/rhs size mismatch");
    let cols = matrix.first().map(|r| r.len()).unwrap_or(0);

    // Clear each row to polynomial entries (augmented with the rhs).
    let mut aug: Vec<Vec<Polynomial>> = Vec::with_capacity(rows);
    for (row, b) in matrix.iter().zip(rhs.iter()) {
        assert_eq!(row.len(), cols, "ragged matrix");
        let mut den = b.den().clone();
        for e in row {
            let g = poly_gcd(&den, e.den());
            den = den.mul(&e.den().exact_div(&g).expect("gcd divides"));
        }
        let mut cleared: Vec<Polynomial> = Vec::with_capacity(cols + 1);
        for e in row {
            let scale = den.exact_div(e.den()).expect("lcm multiple");
            cleared.push(e.num().mul(&scale));
        }
        let scale = den.exact_div(b.den()).expect("lcm multiple");
        cleared.push(b.num().mul(&scale));
        aug.push(strip_content(cleared));
    }

    // Bareiss forward elimination over the unused rows.
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col) in step order
    let mut used = vec![false; rows];
    let mut prev = Polynomial::one();
    for col in 0..cols {
        let mut best: Option<(usize, usize)> = None;
        for (r, row) in aug.iter().enumerate() {
            if used[r] || row[col].is_zero() {
                continue;
            }
            let sz = row[col].num_terms();
            if best.map(|(_, s)| sz < s).unwrap_or(true) {
                best = Some((r, sz));
            }
        }
        let (pr, _) = match best {
            Some(b) => b,
            None => continue, // free column
        };
        used[pr] = true;
        pivots.push((pr, col));
        let pivot_row = aug[pr].clone();
        let pivot = pivot_row[col].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if used[r] {
                continue;
            }
            let factor = row[col].clone();
            for (j, e) in row.iter_mut().enumerate() {
                let num = pivot.mul(e).sub(&factor.mul(&pivot_row[j]));
                *e = num.exact_div(&prev).expect("bareiss division is exact");
            }
        }
        prev = pivot;
    }

    // Inconsistency: an unreduced row with zero coefficients but nonzero rhs.
    for (r, row) in aug.iter().enumerate() {
        if !used[r] && row[..cols].iter().all(|p| p.is_zero()) && !row[cols].is_zero() {
            return Err(Error::NoSolution);
        }
    }

    // Back substitution in reverse pivot order; free variables stay zero.
    let mut solution = vec![RationalFunction::zero(); cols];
    for &(pr, pc) in pivots.iter().rev() {
        let row = &aug[pr];
        let mut acc = RationalFunction::from_poly(row[cols].clone());
        for (j, e) in row.iter().enumerate().take(cols).skip(pc + 1) {
            if e.is_zero() || solution[j].is_zero() {
                continue;
            }
            acc = acc.sub(&RationalFunction::from_poly(e.clone()).mul(&solution[j]));
        }
        solution[pc] = acc.div(&RationalFunction::from_poly(row[pc].clone()))?;
    }
    Ok(solution)
}

/// Divide a row by the rational content of its entries.
fn strip_content(row: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut content = num::BigRational::zero();
    for p in &row {
        if p.is_zero() {
            continue;
        }
        let c = p.content_rat();
        content = if content.is_zero() {
            c
        } else {
            gcd_rat(&content, &c)
        };
    }
    if content.is_zero() {
        return row;
    }
    let inv = content.recip();
    row.into_iter().map(|p| p.scale(&inv)).collect()
}

fn gcd_rat(a: &num::BigRational, b: &num::BigRational) -> num::BigRational {
    use num::Integer;
    num::BigRational::new(a.numer().gcd(b.numer()), a.denom().lcm(b.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::poly::rat_int;

    fn rf_poly(p: Polynomial) -> RationalFunction {
        RationalFunction::from_poly(p)
    }

    fn rf_int(n: i64) -> RationalFunction {
        rf_poly(Polynomial::from_int(n))
    }

    #[test]
    fn single_equation() {
        // x = n/(n+1)
        let n = Polynomial::var("n");
        let rhs = RationalFunction::new(n.clone(), n.add(&Polynomial::one()));
        let sol = solve_linear_system(&[vec![rf_int(1)]], &[rhs.clone()]).unwrap();
        assert_eq!(sol[0], rhs);
    }

    #[test]
    fn inconsistent() {
        let m = vec![vec![rf_int(1)], vec![rf_int(1)]];
        let rhs = vec![rf_int(1), rf_int(2)];
        assert!(matches!(
            solve_linear_system(&m, &rhs),
            Err(Error::NoSolution)
        ));
    }

    #[test]
    fn identity_2x2() {
        let a = rf_poly(Polynomial::var("a"));
        let b = rf_poly(Polynomial::var("b"));
        let m = vec![vec![rf_int(1), rf_int(0)], vec![rf_int(0), rf_int(1)]];
        let rhs = vec![a.clone(), b.clone()];
        let sol = solve_linear_system(&m, &rhs).unwrap();
        assert_eq!(sol, vec![a, b]);
    }

    #[test]
    fn free_variable_set_to_zero() {
        // x + y = 3 has solution (3, 0)
        let m = vec![vec![rf_int(1), rf_int(1)]];
        let rhs = vec![rf_int(3)];
        let sol = solve_linear_system(&m, &rhs).unwrap();
        assert_eq!(sol[0].as_constant().unwrap(), rat_int(3));
        assert!(sol[1].is_zero());
    }

    #[test]
    fn symbolic_solve_reproduces_rhs() {
        let n = Polynomial::var("n");
        let m = vec![
            vec![rf_poly(n.clone()), rf_int(1)],
            vec![rf_int(1), rf_poly(n.clone())],
        ];
        let rhs = vec![
            rf_poly(n.pow(2).add(&Polynomial::from_int(2))),
            rf_poly(n.scale(&rat_int(2)).add(&n)),
        ];
        let sol = solve_linear_system(&m, &rhs).unwrap();
        for (row, b) in m.iter().zip(rhs.iter()) {
            let mut acc = RationalFunction::zero();
            for (e, x) in row.iter().zip(sol.iter()) {
                acc = acc.add(&e.mul(x));
            }
            assert_eq!(&acc, b);
        }
    }

    #[test]
    fn overdetermined_consistent() {
        // x = 2 from three consistent equations
        let m = vec![vec![rf_int(1)], vec![rf_int(2)], vec![rf_int(3)]];
        let rhs = vec![rf_int(2), rf_int(4), rf_int(6)];
        let sol = solve_linear_system(&m, &rhs).unwrap();
        assert_eq!(sol[0].as_constant().unwrap(), rat_int(2));
    }

    #[test]
    fn wide_system_with_parameters() {
        // 4 unknowns, 6 equations, entries in two parameters
        let a = Polynomial::var("a");
        let b = Polynomial::var("b");
        let x_true = [
            rf_poly(a.clone()),
            rf_poly(b.clone()),
            rf_int(1),
            RationalFunction::new(Polynomial::one(), a.add(&Polynomial::one())),
        ];
        let entries = |i: usize, j: usize| -> RationalFunction {
            // deterministic small polynomials
            let c = ((i * 3 + j * 5) % 7) as i64 - 3;
            if (i + j) % 3 == 0 {
                rf_poly(a.scale(&rat_int(c)).add(&Polynomial::from_int(1)))
            } else if (i + j) % 3 == 1 {
                rf_poly(b.add(&Polynomial::from_int(c)))
            } else {
                rf_int(c)
            }
        };
        let mut m = Vec::new();
        let mut rhs = Vec::new();
        for i in 0..6 {
            let row: Vec<RationalFunction> = (0..4).map(|j| entries(i, j)).collect();
            let mut acc = RationalFunction::zero();
            for (e, x) in row.iter().zip(x_true.iter()) {
                acc = acc.add(&e.mul(x));
            }
            m.push(row);
            rhs.push(acc);
        }
        let sol = solve_linear_system(&m, &rhs).unwrap();
        for (row, b) in m.iter().zip(rhs.iter()) {
            let mut acc = RationalFunction::zero();
            for (e, x) in row.iter().zip(sol.iter()) {
                acc = acc.add(&e.mul(x));
            }
            assert_eq!(&acc, b);
        }
    }
}
