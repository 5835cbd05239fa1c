//! Best-effort factorization for output display and first-order closed forms.
//!
//! Extracts the rational content, splits square-free parts (Yun), and peels
//! off factors that are linear in one variable with coefficients affine in
//! the remaining symbols. Anything else stays as a single factor, so this is
//! not a full irreducible factorization.

use num::{One, Signed, Zero};

use crate::field::intfactor::divisors;
use crate::field::poly::{poly_gcd, rat_int, Polynomial, Rat};

/// `poly = coeff * prod(factors[i].0 ^ factors[i].1)`, factors primitive with
/// positive leading coefficients, sorted deterministically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factored {
    pub coeff: Rat,
    pub factors: Vec<(Polynomial, u32)>,
}

impl Factored {
    pub fn expand(&self) -> Polynomial {
        let mut acc = Polynomial::constant(self.coeff.clone());
        for (p, e) in &self.factors {
            acc = acc.mul(&p.pow(*e));
        }
        acc
    }

    fn merge(mut self, other: Factored) -> Factored {
        self.coeff *= other.coeff;
        for (p, e) in other.factors {
            self.push(p, e);
        }
        self
    }

    fn push(&mut self, p: Polynomial, mult: u32) {
        for (q, e) in self.factors.iter_mut() {
            if *q == p {
                *e += mult;
                return;
            }
        }
        self.factors.push((p, mult));
    }
}

/// Factor for display: content x linear factors x square-free remainders.
pub fn factor_polynomial(p: &Polynomial) -> Factored {
    if p.is_zero() {
        return Factored {
            coeff: Rat::zero(),
            factors: Vec::new(),
        };
    }
    let mut out = factor_core(p);
    out.factors.sort_by(|a, b| {
        a.0.total_degree()
            .cmp(&b.0.total_degree())
            .then_with(|| format!("{}", a.0).cmp(&format!("{}", b.0)))
    });
    debug_assert_eq!(&out.expand(), p);
    out
}

fn factor_core(p: &Polynomial) -> Factored {
    if let Some(c) = p.as_constant() {
        return Factored {
            coeff: c,
            factors: Vec::new(),
        };
    }
    let var = p.vars()[0].clone();
    let cont = p.content_in(&var);
    if !cont.is_one() && cont.as_constant().is_none() {
        let pp = p.exact_div(&cont).expect("content divides");
        return factor_core(&cont).merge(factor_core(&pp));
    }
    let mut out = Factored {
        coeff: Rat::one(),
        factors: Vec::new(),
    };
    for (part, mult) in squarefree(p, &var) {
        let mut rest = part.primitive_part();
        while rest.as_constant().is_none() {
            match peel_linear(&rest, &var) {
                Some((lin, quot)) => {
                    out.push(lin, mult);
                    rest = quot.primitive_part();
                }
                None => {
                    out.push(rest.clone(), mult);
                    break;
                }
            }
        }
    }
    // the factors reconstruct p up to a rational constant
    let product = out.expand();
    let residual = p
        .exact_div(&product)
        .expect("factors divide")
        .as_constant()
        .expect("residual is constant");
    out.coeff *= residual;
    out
}

/// Square-free decomposition in `var` with primitive, positive-leading
/// parts; for primitive positive-leading input the parts reconstruct it
/// exactly.
pub(crate) fn squarefree_parts(p: &Polynomial, var: &str) -> Vec<(Polynomial, u32)> {
    squarefree(p, var)
        .into_iter()
        .map(|(part, m)| (part.primitive_part(), m))
        .collect()
}

/// Square-free decomposition in `var`; parts are returned up to rational
/// constants (p = const * prod part_i^i over the returned multiplicities).
fn squarefree(p: &Polynomial, var: &str) -> Vec<(Polynomial, u32)> {
    let dp = p.derivative(var);
    if dp.is_zero() {
        return vec![(p.clone(), 1)];
    }
    let mut g = poly_gcd(p, &dp);
    if g.as_constant().is_some() {
        return vec![(p.clone(), 1)];
    }
    let mut out = Vec::new();
    let mut w = p.exact_div(&g).expect("gcd divides");
    let mut i = 1u32;
    while w.as_constant().is_none() {
        let y = poly_gcd(&w, &g);
        let part = w.exact_div(&y).expect("gcd divides");
        if part.as_constant().is_none() {
            out.push((part, i));
        }
        g = g.exact_div(&y).expect("gcd divides");
        w = y;
        i += 1;
    }
    out
}

/// Try to split off one factor linear in `var` whose root is affine in the
/// remaining symbols. Returns (primitive linear factor, quotient).
fn peel_linear(p: &Polynomial, var: &str) -> Option<(Polynomial, Polynomial)> {
    let deg = p.degree_in(var);
    if deg < 1 {
        return None;
    }
    if deg == 1 {
        let lin = p.primitive_part();
        let quot = p.exact_div(&lin).expect("primitive part divides");
        return Some((lin, quot));
    }
    let params: Vec<String> = p
        .vars()
        .iter()
        .filter(|v| v.as_str() != var)
        .cloned()
        .collect();
    if params.is_empty() {
        let root = rational_roots_univariate(p, var).into_iter().next()?;
        let lin = linear_from_root(var, &params, &[], &root);
        let quot = p.exact_div(&lin).ok()?;
        return Some((lin, quot));
    }
    // Evaluate the parameters at a base point, find the rational roots, and
    // lift each root to an affine function of the parameters.
    let base: Vec<Rat> = (0..params.len())
        .map(|i| rat_int(BASE_POINTS[i % BASE_POINTS.len()]))
        .collect();
    let p0 = eval_params(p, &params, &base);
    if p0.degree_in(var) != deg {
        return None; // leading coefficient vanished at the base point
    }
    let roots0 = rational_roots_univariate(&p0, var);
    for r0 in roots0 {
        // per-parameter slope candidates from single-coordinate perturbations
        let mut slopes: Vec<Vec<Rat>> = Vec::with_capacity(params.len());
        let mut ok = true;
        for i in 0..params.len() {
            let mut pt = base.clone();
            pt[i] += Rat::one();
            let pi = eval_params(p, &params, &pt);
            if pi.degree_in(var) != deg {
                ok = false;
                break;
            }
            let roots_i = rational_roots_univariate(&pi, var);
            if roots_i.is_empty() {
                ok = false;
                break;
            }
            slopes.push(roots_i.iter().map(|ri| ri - &r0).collect());
        }
        if !ok {
            continue;
        }
        // try slope combinations, each verified by exact trial division
        let mut combo = vec![0usize; params.len()];
        'combos: loop {
            let chosen: Vec<Rat> = (0..params.len())
                .map(|i| slopes[i][combo[i]].clone())
                .collect();
            let lin = linear_from_root(var, &params, &chosen, &r0);
            if lin.degree_in(var) == 1 {
                if let Ok(quot) = p.exact_div(&lin) {
                    return Some((lin, quot));
                }
            }
            for i in 0..params.len() {
                combo[i] += 1;
                if combo[i] < slopes[i].len() {
                    continue 'combos;
                }
                combo[i] = 0;
            }
            break;
        }
    }
    None
}

const BASE_POINTS: [i64; 8] = [17, 23, 31, 41, 47, 59, 67, 73];

/// var - (root_at_base + sum slope_i * (param_i - base_i)), primitive.
fn linear_from_root(var: &str, params: &[String], slopes: &[Rat], root_at_base: &Rat) -> Polynomial {
    let mut root_expr = Polynomial::constant(root_at_base.clone());
    for (i, name) in params.iter().enumerate() {
        let s = match slopes.get(i) {
            Some(s) if !s.is_zero() => s,
            _ => continue,
        };
        let base = rat_int(BASE_POINTS[i % BASE_POINTS.len()]);
        let term = Polynomial::var(name)
            .sub(&Polynomial::constant(base))
            .scale(s);
        root_expr = root_expr.add(&term);
    }
    Polynomial::var(var).sub(&root_expr).primitive_part()
}

fn eval_params(p: &Polynomial, params: &[String], values: &[Rat]) -> Polynomial {
    let mut q = p.clone();
    for (name, v) in params.iter().zip(values.iter()) {
        q = q.substitute_rat(name, v);
    }
    q
}

/// All rational roots of a univariate polynomial.
pub fn rational_roots_univariate(p: &Polynomial, var: &str) -> Vec<Rat> {
    let mut out = Vec::new();
    if p.degree_in(var) < 1 {
        return out;
    }
    let prim = p.primitive_part();
    let coeffs = prim.coeffs_in(var);
    let consts: Vec<Rat> = coeffs
        .iter()
        .map(|c| c.as_constant().expect("univariate"))
        .collect();
    let t = consts.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if t > 0 {
        out.push(Rat::zero());
    }
    if consts.len() - 1 == t {
        out.sort();
        return out;
    }
    let trailing = &consts[t];
    let leading = consts.last().expect("nonzero");
    let p_divs = divisors(trailing.numer());
    let q_divs = divisors(leading.numer());
    for pn in &p_divs {
        for qn in &q_divs {
            for sign in [1i64, -1] {
                let cand = Rat::new(pn * num::BigInt::from(sign), qn.clone());
                let val: Rat = consts
                    .iter()
                    .rev()
                    .fold(Rat::zero(), |acc, c| acc * &cand + c);
                if val.is_zero() && !out.contains(&cand) {
                    out.push(cand);
                }
            }
        }
    }
    out.sort();
    out
}

/// Positive when the leading coefficient (graded-lex) is positive.
pub fn leading_sign_positive(p: &Polynomial) -> bool {
    !p.leading_coeff().is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> Polynomial {
        Polynomial::var(name)
    }

    #[test]
    fn factors_univariate_with_multiplicity() {
        // 8(n-1)^2
        let n = v("n");
        let p = n.sub(&Polynomial::one()).pow(2).scale(&rat_int(8));
        let f = factor_polynomial(&p);
        assert_eq!(f.coeff, rat_int(8));
        assert_eq!(f.factors, vec![(n.sub(&Polynomial::one()), 2)]);
        assert_eq!(f.expand(), p);
    }

    #[test]
    fn factors_multi_parameter_linear_forms() {
        // -2 (2a+n-1)(a+b+n-1)(2b+n-1)
        let a = v("a");
        let b = v("b");
        let n = v("n");
        let f1 = a.scale(&rat_int(2)).add(&n).sub(&Polynomial::one());
        let f2 = a.add(&b).add(&n).sub(&Polynomial::one());
        let f3 = b.scale(&rat_int(2)).add(&n).sub(&Polynomial::one());
        let p = f1.mul(&f2).mul(&f3).scale(&rat_int(-2));
        let f = factor_polynomial(&p);
        assert_eq!(f.expand(), p);
        assert_eq!(f.factors.len(), 3);
        for (fac, e) in &f.factors {
            assert_eq!(*e, 1);
            assert_eq!(fac.total_degree(), 1);
        }
        assert_eq!(f.coeff, rat_int(-2));
    }

    #[test]
    fn cubic_without_rational_roots_stays_whole() {
        // k^3 + 4k^2 + 27k + 23 has no rational roots
        let k = v("k");
        let p = k
            .pow(3)
            .add(&k.pow(2).scale(&rat_int(4)))
            .add(&k.scale(&rat_int(27)))
            .add(&Polynomial::from_int(23));
        let f = factor_polynomial(&p);
        assert_eq!(f.factors, vec![(p.clone(), 1)]);
        assert_eq!(f.coeff, rat_int(1));
    }

    #[test]
    fn rational_roots_basic() {
        // (2k-1)(k+3)
        let k = v("k");
        let p = k
            .scale(&rat_int(2))
            .sub(&Polynomial::one())
            .mul(&k.add(&Polynomial::from_int(3)));
        let roots = rational_roots_univariate(&p, "k");
        assert_eq!(roots, vec![rat_int(-3), crate::field::poly::rat_frac(1, 2)]);
    }

    #[test]
    fn mixed_content_and_linear() {
        // (p-1)(n-nn) with main variable nn
        let p_sym = v("p");
        let n = v("n");
        let nn = v("nn");
        let poly = p_sym.sub(&Polynomial::one()).mul(&n.sub(&nn));
        let f = factor_polynomial(&poly);
        assert_eq!(f.expand(), poly);
        assert_eq!(f.factors.len(), 2);
    }
}
