//! Integer root finding and dispersion sets.
//!
//! `integer_roots` treats its input as univariate in one variable with
//! coefficients polynomial in the remaining symbols: an integer z counts only
//! when substitution makes the whole polynomial vanish identically.
//!
//! `dispersion_set(q, r)` is the set of nonnegative shifts j at which q(k)
//! and r(k+j) share a nonconstant factor, computed from the integer roots of
//! the resultant Res_k(q(k), r(k+j)) in j.

use std::collections::BTreeSet;

use num::{BigInt, Signed, Zero};

use crate::field::intfactor::divisors;
use crate::field::poly::{poly_gcd, rat_int, resultant, Polynomial, Rat};

/// Integer roots of a univariate slice (rational coefficients).
///
/// Uses the anchor trick: for an anchor m with s(m) != 0, every integer root z
/// satisfies (z - m) | s(m).
fn integer_roots_univariate(s: &Polynomial, var: &str) -> Vec<BigInt> {
    let mut roots = Vec::new();
    let mut s = s.clone();
    if s.is_zero() {
        return roots;
    }
    // clear rational content so coefficients are integers
    s = s.primitive_part();
    // strip var^t: contributes the root 0
    let coeffs = s.coeffs_in(var);
    let t = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if t > 0 {
        roots.push(BigInt::zero());
        s = Polynomial::from_coeffs_in(var, &coeffs[t..]);
    }
    if s.degree_in(var) <= 0 {
        return roots;
    }
    // find an anchor with nonzero value
    let mut anchor: Option<(i64, Rat)> = None;
    for m in [0i64, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5] {
        let v = s
            .substitute_rat(var, &rat_int(m))
            .as_constant()
            .expect("univariate slice");
        if !v.is_zero() {
            anchor = Some((m, v));
            break;
        } else {
            // m is itself a root; peel off (var - m)
            roots.push(BigInt::from(m));
            let factor = Polynomial::var(var).sub(&Polynomial::from_int(m));
            while let Ok(qt) = s.exact_div(&factor) {
                s = qt;
                if s.substitute_rat(var, &rat_int(m))
                    .as_constant()
                    .map(|c| !c.is_zero())
                    .unwrap_or(true)
                {
                    break;
                }
            }
            if s.degree_in(var) <= 0 {
                return dedup(roots);
            }
        }
    }
    let (m, val) = match anchor {
        Some(a) => a,
        None => return dedup(roots),
    };
    // val is a nonzero rational; integer roots z satisfy (z-m) | numer(val)
    // after clearing denominators (s has integer coefficients, so val is an
    // integer here).
    let numer = val.numer().clone();
    if numer.is_zero() {
        return dedup(roots);
    }
    for d in divisors(&numer) {
        for cand in [BigInt::from(m) + &d, BigInt::from(m) - &d] {
            let cr = Rat::from_integer(cand.clone());
            let v = s
                .substitute_rat(var, &cr)
                .as_constant()
                .expect("univariate slice");
            if v.is_zero() {
                roots.push(cand);
            }
        }
    }
    dedup(roots)
}

fn dedup(mut v: Vec<BigInt>) -> Vec<BigInt> {
    v.sort();
    v.dedup();
    v
}

/// All integers z such that p(z) vanishes identically in the remaining
/// symbols.
pub fn integer_roots(p: &Polynomial, var: &str) -> Vec<BigInt> {
    if p.is_zero() {
        return Vec::new();
    }
    // Group terms by their parameter part; each group is a univariate slice.
    // A root of p must be a root of every slice, so candidates come from one
    // nonzero slice (preferring the parameter-free one) and are verified on
    // the full polynomial.
    let slice = parameter_free_slice(p, var).unwrap_or_else(|| first_slice(p, var));
    let candidates = integer_roots_univariate(&slice, var);
    candidates
        .into_iter()
        .filter(|z| {
            p.substitute_rat(var, &Rat::from_integer(z.clone()))
                .is_zero()
        })
        .collect()
}

/// The sub-polynomial of terms free of every symbol except `var`.
fn parameter_free_slice(p: &Polynomial, var: &str) -> Option<Polynomial> {
    let mut slice = Polynomial::zero();
    for (exps, c) in p.iter_terms() {
        if exps.iter().all(|(v, _)| v == var) {
            let e = exps.first().map(|(_, e)| *e).unwrap_or(0);
            slice = slice.add(&Polynomial::monomial(var, e, c.clone()));
        }
    }
    if slice.is_zero() {
        None
    } else {
        Some(slice)
    }
}

/// The univariate slice attached to the smallest parameter monomial.
fn first_slice(p: &Polynomial, var: &str) -> Polynomial {
    // coefficients of p as univariate in var are polynomials in the rest;
    // take the slice of terms sharing the leading parameter monomial of the
    // lowest nonzero coefficient.
    let coeffs = p.coeffs_in(var);
    let c = coeffs
        .iter()
        .find(|c| !c.is_zero())
        .expect("nonzero polynomial");
    // pick one parameter monomial and collect the matching term of every
    // coefficient
    let (target_exps, _) = c.iter_terms().next().expect("nonzero");
    let mut slice = Polynomial::zero();
    for (e, cc) in coeffs.iter().enumerate() {
        for (exps, coef) in cc.iter_terms() {
            if exps == target_exps {
                slice = slice.add(&Polynomial::monomial(var, e as u32, coef.clone()));
            }
        }
    }
    slice
}

/// Nonnegative integer shifts j with deg gcd(q(k), r(k+j)) > 0.
pub fn dispersion_set(q: &Polynomial, r: &Polynomial, var: &str) -> Vec<i64> {
    assert!(!q.is_zero() && !r.is_zero(), "dispersion of zero polynomial");
    if q.degree_in(var) <= 0 || r.degree_in(var) <= 0 {
        return Vec::new();
    }
    // fresh shift symbol; parser identifiers cannot collide with it
    let j = "~j";
    let shifted = r.substitute(var, &Polynomial::var(var).add(&Polynomial::var(j)));
    let res = resultant(q, &shifted, var);
    if res.is_zero() {
        // q and r(k+j) share a factor for every j (can only happen when a
        // factor is free of var, which primitive inputs exclude); fall back
        // to a bounded scan.
        let bound = (q.degree_in(var) * r.degree_in(var)).max(1);
        return (0..=bound)
            .filter(|&jv| {
                poly_gcd(q, &r.shift_int(var, jv)).degree_in(var) > 0
            })
            .collect();
    }
    let mut out: BTreeSet<i64> = BTreeSet::new();
    for z in integer_roots(&res, j) {
        if !z.is_negative() {
            if let Ok(v) = i64::try_from(&z) {
                if poly_gcd(q, &r.shift_int(var, v)).degree_in(var) > 0 {
                    out.insert(v);
                }
            }
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> Polynomial {
        Polynomial::var(name)
    }

    #[test]
    fn integer_roots_plain() {
        // (k-3)(k+2)
        let k = v("k");
        let p = k.sub(&Polynomial::from_int(3)).mul(&k.add(&Polynomial::from_int(2)));
        let roots = integer_roots(&p, "k");
        let vals: Vec<i64> = roots.iter().map(|z| i64::try_from(z).unwrap()).collect();
        assert_eq!(vals, vec![-2, 3]);
    }

    #[test]
    fn integer_roots_symbolic_root_excluded() {
        // k - n has no integer root valid for all n
        let p = v("k").sub(&v("n"));
        assert!(integer_roots(&p, "k").is_empty());
    }

    #[test]
    fn integer_roots_no_real_roots() {
        let p = v("k").pow(2).add(&Polynomial::one());
        assert!(integer_roots(&p, "k").is_empty());
    }

    #[test]
    fn integer_roots_with_parameter_factor() {
        // n*k - n = n(k-1): root 1 for all n
        let p = v("n").mul(&v("k")).sub(&v("n"));
        let roots = integer_roots(&p, "k");
        assert_eq!(roots, vec![BigInt::from(1)]);
    }

    #[test]
    fn dispersion_simple_shift() {
        // q = k, r = k-3: r(k+3) = k shares root at j=3
        let q = v("k");
        let r = v("k").sub(&Polynomial::from_int(3));
        assert_eq!(dispersion_set(&q, &r, "k"), vec![3]);
    }

    #[test]
    fn dispersion_symbolic_empty() {
        // q = k-1, r = k-n-1: shift j = n is symbolic, so the set is empty
        let q = v("k").sub(&Polynomial::one());
        let r = v("k").sub(&v("n")).sub(&Polynomial::one());
        assert!(dispersion_set(&q, &r, "k").is_empty());
        // brute-force cross-check for j = 0..20
        for j in 0..=20 {
            assert!(poly_gcd(&q, &r.shift_int("k", j)).degree_in("k") <= 0);
        }
    }

    #[test]
    fn dispersion_multiple() {
        // q = k, r = k(k-2): gcd(k, r(k+j)) is nonconstant at j = 0 and j = 2
        let q = v("k");
        let r = v("k").mul(&v("k").sub(&Polynomial::from_int(2)));
        assert_eq!(dispersion_set(&q, &r, "k"), vec![0, 2]);
        // transposed operands see only the j = 0 overlap
        assert_eq!(dispersion_set(&r, &q, "k"), vec![0]);
    }
}
