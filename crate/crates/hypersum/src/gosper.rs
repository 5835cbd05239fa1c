//! Gosper's decision procedure for indefinite hypergeometric summation.
//!
//! Given a hypergeometric term a(k), either construct a hypergeometric
//! antidifference g (g(k) - g(k-1) = a(k)) together with the certificate
//! {p, q, r, f} of the representation
//!
//! ```text
//! a(k)/a(k-1) = (p(k)/p(k-1)) * (q(k)/r(k)),   gcd(q(k), r(k+j)) = 1 (j >= 0)
//! g(k) = (q(k+1)/p(k)) * f(k) * a(k),          p(k) = q(k+1) f(k) - r(k) f(k-1)
//! ```
//!
//! or prove that none exists. The decomposition runs on the factored term
//! ratio, so dispersions and gcd extractions act on low-degree factor pairs.

use num::Signed;

use crate::error::{Error, Result};
use crate::expr::{poly_to_expr, ratfun_to_expr, Expr, Substitution};
use crate::field::factor::squarefree_parts;
use crate::field::{
    dispersion_set, poly_gcd, rat_as_i64, FactorProduct, Polynomial, Rat, RationalFunction,
};
use crate::simplify::{
    simplify_combinatorial, simplify_combinatorial_pretty, term_ratio, Direction, TermRatio,
};
use crate::trace::Trace;

/// The certificate {p, q, r, f}; `f` is present after a successful solve.
#[derive(Clone, Debug)]
pub struct GosperForm {
    pub var: String,
    pub p: Polynomial,
    pub q: Polynomial,
    pub r: Polynomial,
    pub f: Option<RationalFunction>,
}

impl GosperForm {
    /// p(k) - q(k+1) f(k) + r(k) f(k-1) must vanish identically.
    pub fn certificate_holds(&self) -> bool {
        let f = match &self.f {
            Some(f) => f,
            None => return false,
        };
        let var = &self.var;
        let q1 = self.q.shift_int(var, 1);
        let lhs = RationalFunction::from_poly(self.p.clone())
            .sub(&RationalFunction::from_poly(q1).mul(f))
            .add(&RationalFunction::from_poly(self.r.clone()).mul(&f.shift_int(var, -1)));
        lhs.is_zero()
    }

    /// The stored (p, q, r) reconstruct the term ratio exactly.
    pub fn matches_ratio(&self, ratio: &TermRatio) -> bool {
        let var = &self.var;
        let p_prev = RationalFunction::from_poly(self.p.shift_int(var, -1));
        let p_cur = RationalFunction::from_poly(self.p.clone());
        let qr = RationalFunction::from_poly(self.q.clone());
        let rr = RationalFunction::from_poly(self.r.clone());
        let rebuilt = p_cur
            .div(&p_prev)
            .and_then(|a| a.mul(&qr).div(&rr));
        match rebuilt {
            Ok(r) => r == ratio.ratio,
            Err(_) => false,
        }
    }

    /// g(k)/a(k) = q(k+1) f(k) / p(k).
    pub fn certificate_ratio(&self) -> Option<RationalFunction> {
        let f = self.f.as_ref()?;
        let q1 = RationalFunction::from_poly(self.q.shift_int(&self.var, 1));
        q1.mul(f)
            .div(&RationalFunction::from_poly(self.p.clone()))
            .ok()
    }
}

/// A hypergeometric antidifference with its certificate.
#[derive(Clone, Debug)]
pub struct Antidifference {
    /// Canonical form of g.
    pub g: Expr,
    /// Factored display form of g.
    pub g_pretty: Expr,
    pub direction: Direction,
    pub form: GosperForm,
}

/// One multiplicative side (numerator or denominator) of a ratio, kept as
/// primitive square-free factors that are pairwise coprime or identical.
#[derive(Clone, Debug, Default)]
struct FactorSide {
    entries: Vec<(Polynomial, i64)>,
}

impl FactorSide {
    fn insert(&mut self, p: Polynomial, mult: i64) {
        let mut work = vec![(p, mult)];
        'outer: while let Some((p, m)) = work.pop() {
            if m == 0 || p.as_constant().is_some() {
                continue;
            }
            for idx in 0..self.entries.len() {
                let g = poly_gcd(&p, &self.entries[idx].0);
                if g.as_constant().is_some() {
                    continue;
                }
                let (u, a) = self.entries.remove(idx);
                let u_rest = u.exact_div(&g).expect("gcd divides");
                let p_rest = p.exact_div(&g).expect("gcd divides");
                self.entries.push((g, a + m));
                if u_rest.as_constant().is_none() {
                    self.entries.push((u_rest, a));
                }
                work.push((p_rest, m));
                continue 'outer;
            }
            self.entries.push((p, m));
        }
    }

    fn expand(&self) -> Polynomial {
        let mut acc = Polynomial::one();
        for (p, e) in &self.entries {
            acc = acc.mul(&p.pow(*e as u32));
        }
        acc
    }
}

/// Gosper-Petkovsek decomposition of a reduced term ratio; `f` is unset.
pub fn gpp_decompose(ratio: &TermRatio) -> GosperForm {
    let var = ratio.var.clone();
    let mut q_side = FactorSide::default();
    let mut r_side = FactorSide::default();
    for (poly, e) in ratio.flist.factors() {
        for (part, m) in squarefree_parts_profiled(poly, &var) {
            let mult = m as i64 * e.abs();
            if *e > 0 {
                q_side.insert(part, mult);
            } else {
                r_side.insert(part, mult);
            }
        }
    }
    let coeff = ratio.flist.coeff().clone();
    let mut p_acc = FactorProduct::one();

    // dispersion set from factor pairs
    let mut shifts: Vec<i64> = Vec::new();
    for (u, _) in &q_side.entries {
        for (w, _) in &r_side.entries {
            if u.degree_in(&var) > 0 && w.degree_in(&var) > 0 {
                for j in dispersion_set(u, w, &var) {
                    if !shifts.contains(&j) {
                        shifts.push(j);
                    }
                }
            }
        }
    }
    shifts.sort_unstable();

    for &j in &shifts {
        'pairs: loop {
            for qi in 0..q_side.entries.len() {
                for ri in 0..r_side.entries.len() {
                    let (u, a) = q_side.entries[qi].clone();
                    let (w, b) = r_side.entries[ri].clone();
                    let w_shifted = w.shift_int(&var, j);
                    let h = poly_gcd(&u, &w_shifted);
                    if h.as_constant().is_some() {
                        continue;
                    }
                    let m = a.min(b);
                    // q loses h^m, r loses h(k-j)^m, p gains h(k-i)^m for i<j
                    let u_rest = u.exact_div(&h).expect("gcd divides");
                    let h_back = h.shift_int(&var, -j);
                    let w_rest = w.exact_div(&h_back).expect("shifted gcd divides");
                    q_side.entries.remove(qi);
                    r_side.entries.remove(ri);
                    if a - m > 0 {
                        q_side.insert(h.clone(), a - m);
                    }
                    q_side.insert(u_rest, a);
                    if b - m > 0 {
                        r_side.insert(h_back.clone(), b - m);
                    }
                    r_side.insert(w_rest, b);
                    for i in 0..j {
                        p_acc.mul_poly(&h.shift_int(&var, -i), m);
                    }
                    continue 'pairs;
                }
            }
            break;
        }
    }

    // q carries the rational coefficient: numerator scale and the sign.
    let q = q_side.expand().scale(&Rat::from_integer(coeff.numer().clone()));
    let r = r_side.expand().scale(&Rat::from_integer(coeff.denom().clone()));
    let p = p_acc.to_ratfun().num().clone().primitive_part();
    GosperForm {
        var,
        p,
        q,
        r,
        f: None,
    }
}

fn squarefree_parts_profiled(poly: &Polynomial, var: &str) -> Vec<(Polynomial, u32)> {
    if poly.degree_in(var) <= 0 {
        return vec![(poly.clone(), 1)];
    }
    squarefree_parts(poly, var)
}

/// Upper bound for deg f in p(k) = q(k+1) f(k) - r(k) f(k-1), from the
/// classical case split on s+ = q(k+1) + r(k) and s- = q(k+1) - r(k).
/// `None` means no nonnegative bound exists.
pub fn degree_bound(form: &GosperForm) -> Option<i64> {
    degree_bound_for(form.p.degree_in(&form.var), &form.q, &form.r, &form.var)
}

pub(crate) fn degree_bound_for(
    p_deg: i64,
    q: &Polynomial,
    r: &Polynomial,
    var: &str,
) -> Option<i64> {
    let q1 = q.shift_int(var, 1);
    let s_plus = q1.add(r);
    let s_minus = q1.sub(r);
    let d_plus = s_plus.degree_in(var);
    let d_minus = s_minus.degree_in(var);
    let bound = if d_minus >= d_plus {
        p_deg - d_minus
    } else {
        let s = d_plus;
        let mut cands = vec![p_deg - s + 1];
        // candidate root from the top coefficients: -2 * [k^(s-1)](s-) / lc(s+)
        let a_coef = s_minus
            .coeffs_in(var)
            .get((s - 1) as usize)
            .cloned()
            .unwrap_or_else(Polynomial::zero);
        let b_coef = s_plus.leading_in(var);
        let ell = RationalFunction::new(a_coef.scale(&crate::field::rat_int(-2)), b_coef);
        if let Some(c) = ell.as_constant() {
            if let Some(z) = rat_as_i64(&c) {
                if z >= 0 {
                    cands.push(z);
                }
            }
        }
        cands.into_iter().max().unwrap()
    };
    if bound < 0 {
        None
    } else {
        Some(bound)
    }
}

/// Solve p(k) = q(k+1) f(k) - r(k) f(k-1) for a polynomial f of degree <= d
/// by undetermined coefficients over the parameter field.
pub fn solve_f(form: &GosperForm, d: i64) -> Result<RationalFunction> {
    let var = &form.var;
    let (rows, width) = operator_rows(&form.q, &form.r, d, var);
    // rows[m] = sum_i OP(k^i)[m] * c_i; right-hand side = p's coefficients
    let p_coeffs = form.p.coeffs_in(var);
    let height = rows.len().max(p_coeffs.len());
    let mut matrix: Vec<Vec<RationalFunction>> = Vec::with_capacity(height);
    let mut rhs: Vec<RationalFunction> = Vec::with_capacity(height);
    for m in 0..height {
        let mut row = Vec::with_capacity(width);
        for i in 0..width {
            let entry = rows
                .get(m)
                .map(|r| r[i].clone())
                .unwrap_or_else(Polynomial::zero);
            row.push(RationalFunction::from_poly(entry));
        }
        matrix.push(row);
        rhs.push(RationalFunction::from_poly(
            p_coeffs.get(m).cloned().unwrap_or_else(Polynomial::zero),
        ));
    }
    let sol = crate::field::solve_linear_system(&matrix, &rhs)?;
    Ok(poly_from_coeff_solution(&sol, var))
}

/// Coefficient rows of the operator f -> q(k+1) f(k) - r(k) f(k-1) applied to
/// the monomial basis 1, k, ..., k^d. Entry [m][i] is the coefficient of k^m
/// in OP(k^i).
pub(crate) fn operator_rows(
    q: &Polynomial,
    r: &Polynomial,
    d: i64,
    var: &str,
) -> (Vec<Vec<Polynomial>>, usize) {
    let q1 = q.shift_int(var, 1);
    let width = (d + 1) as usize;
    let mut images: Vec<Vec<Polynomial>> = Vec::with_capacity(width);
    let mut max_deg = 0usize;
    let k = Polynomial::var(var);
    let mut k_pow = Polynomial::one();
    for i in 0..width {
        if i > 0 {
            k_pow = k_pow.mul(&k);
        }
        let shifted_pow = k_pow.shift_int(var, -1);
        let image = q1.mul(&k_pow).sub(&r.mul(&shifted_pow));
        let coeffs = image.coeffs_in(var);
        max_deg = max_deg.max(coeffs.len());
        images.push(coeffs);
    }
    let mut rows = vec![vec![Polynomial::zero(); width]; max_deg];
    for (i, coeffs) in images.iter().enumerate() {
        for (m, c) in coeffs.iter().enumerate() {
            rows[m][i] = c.clone();
        }
    }
    (rows, width)
}

pub(crate) fn poly_from_coeff_solution(sol: &[RationalFunction], var: &str) -> RationalFunction {
    let k = Polynomial::var(var);
    let mut k_pow = Polynomial::one();
    let mut acc = RationalFunction::zero();
    for (i, c) in sol.iter().enumerate() {
        if i > 0 {
            k_pow = k_pow.mul(&k);
        }
        acc = acc.add(&c.mul(&RationalFunction::from_poly(k_pow.clone())));
    }
    acc
}

/// Pair of integer-primitive polynomials (num, den) displaying a rational
/// function with a positive-leading denominator.
pub(crate) fn integer_pair(r: &RationalFunction) -> (Polynomial, Polynomial) {
    let (cn, num) = r.num().primitive_signed();
    let (cd, den) = r.den().primitive_signed();
    let scale = cn / cd; // sign carried by the numerator
    let num = num.scale(&scale_to_int_ratio(&scale).0);
    let den = den.scale(&scale_to_int_ratio(&scale).1);
    (num, den)
}

fn scale_to_int_ratio(s: &Rat) -> (Rat, Rat) {
    (
        Rat::from_integer(s.numer().clone()),
        Rat::from_integer(s.denom().clone()),
    )
}

fn ratio_display(r: &RationalFunction) -> String {
    let (num, den) = integer_pair(r);
    if den.is_one() {
        crate::expr::print(&poly_to_expr(&num))
    } else {
        let e = Expr::Mul(vec![
            poly_to_expr(&num),
            Expr::Pow(Box::new(poly_to_expr(&den)), Box::new(Expr::int(-1))),
        ]);
        crate::expr::print(&e)
    }
}

pub(crate) fn poly_display(p: &Polynomial) -> String {
    crate::expr::print(&poly_to_expr(p))
}

/// Downward antidifference: g with g(k) - g(k-1) = a(k).
pub fn gosper(a: &Expr, var: &str) -> Result<Antidifference> {
    gosper_with(a, var, Direction::Down, &mut Trace::off())
}

/// Antidifference in either direction, with tracing.
///
/// For `Up`, the downward engine runs first and the result is shifted:
/// if a(k) = h(k) - h(k-1) then g(k) = h(k-1) satisfies g(k+1) - g(k) = a(k).
pub fn gosper_with(
    a: &Expr,
    var: &str,
    direction: Direction,
    trace: &mut Trace,
) -> Result<Antidifference> {
    let ratio = term_ratio(a, var, Direction::Down)
        .map_err(|_| Error::GosperNotApplicable)?;
    trace.line(format!(
        "a({v})/a({v}-1):= {}",
        ratio_display(&ratio.ratio),
        v = var
    ));
    trace.line("Gosper algorithm applicable");
    let mut form = gpp_decompose(&ratio);
    debug_assert!(form.matches_ratio(&ratio));
    trace.line(format!("p:= {}", poly_display(&form.p)));
    trace.line(format!("q:= {}", poly_display(&form.q)));
    trace.line(format!("r:= {}", poly_display(&form.r)));
    let d = match degree_bound(&form) {
        Some(d) => d,
        None => return Err(Error::GosperNoClosedForm),
    };
    trace.line(format!("degreebound := {}", d));
    let f = match solve_f(&form, d) {
        Ok(f) => f,
        Err(Error::NoSolution) => return Err(Error::GosperNoClosedForm),
        Err(e) => return Err(e),
    };
    trace.line(format!("f:= {}", ratio_display(&f)));
    form.f = Some(f);
    debug_assert!(form.certificate_holds());
    trace.line("Gosper algorithm successful");

    let cert = form
        .certificate_ratio()
        .expect("certificate just solved");
    let product = Expr::mul2(ratfun_to_expr(&cert).canonical(), a.clone());
    let mut g = simplify_combinatorial(&product)?;
    let mut g_pretty = simplify_combinatorial_pretty(&product)?;
    if direction == Direction::Up {
        let back = Substitution::new(var, Expr::add2(Expr::sym(var), Expr::int(-1)))
            .expect("shift");
        g = g.substitute(&back);
        g_pretty = g_pretty.substitute(&back);
    }
    Ok(Antidifference {
        g,
        g_pretty,
        direction,
        form,
    })
}

/// Definite sum over var = lo..hi by telescoping: g(hi) - g(lo - 1).
pub fn gosper_definite(a: &Expr, var: &str, lo: &Expr, hi: &Expr) -> Result<Expr> {
    let anti = gosper(a, var)?;
    // with numeric bounds, the certificate must be pole free on [lo-1, hi]
    if let (Some(l), Some(h)) = (lo.as_i64(), hi.as_i64()) {
        if let Some(cert) = anti.form.certificate_ratio() {
            for m in (l - 1)..=h {
                let den_at = cert.den().substitute_rat(var, &crate::field::rat_int(m));
                if den_at.is_zero() {
                    return Err(Error::PoleInRange(m.to_string()));
                }
            }
        }
    }
    let at_hi = anti
        .g
        .substitute(&Substitution::new(var, hi.clone()).expect("bound"));
    let at_lo = anti.g.substitute(
        &Substitution::new(var, Expr::add2(lo.clone(), Expr::int(-1))).expect("bound"),
    );
    let diff = Expr::sub2(at_hi, at_lo);
    Ok(crate::simplify::simplify_gamma(&diff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn ratio_of(text: &str, var: &str) -> TermRatio {
        term_ratio(&parse(text).unwrap(), var, Direction::Down).unwrap()
    }

    #[test]
    fn gpp_k_times_factorial() {
        // a(k) = k * k!: ratio k^2/(k-1); certificate {k, k, 1, 1}
        let ratio = ratio_of("k*factorial(k)", "k");
        let form = gpp_decompose(&ratio);
        let k = Polynomial::var("k");
        assert_eq!(form.p, k);
        assert_eq!(form.q, k);
        assert_eq!(form.r, Polynomial::one());
        let d = degree_bound(&form).unwrap();
        let f = solve_f(&form, d).unwrap();
        assert!(f.is_one());
    }

    #[test]
    fn gpp_pochhammer_case() {
        // ratio (k-1)/(k-n-1): p=1, q=k-1, r=k-n-1, degreebound 0, f=1/(n+1)
        let ratio = ratio_of("pochhammer(k-n,n)", "k");
        let form = gpp_decompose(&ratio);
        let k = Polynomial::var("k");
        let n = Polynomial::var("n");
        assert_eq!(form.p, Polynomial::one());
        assert_eq!(form.q, k.sub(&Polynomial::one()));
        assert_eq!(form.r, k.sub(&n).sub(&Polynomial::one()));
        assert_eq!(degree_bound(&form), Some(0));
        let f = solve_f(&form, 0).unwrap();
        let expect = RationalFunction::new(Polynomial::one(), n.add(&Polynomial::one()));
        assert_eq!(f, expect);
    }

    #[test]
    fn gpp_trivial_ratio() {
        let ratio = ratio_of("2^k", "k");
        // ratio = 2: p = 1, q = 2, r = 1
        let form = gpp_decompose(&ratio);
        assert_eq!(form.p, Polynomial::one());
        assert_eq!(form.q, Polynomial::from_int(2));
        assert_eq!(form.r, Polynomial::one());
    }

    #[test]
    fn degree_bound_constant_summand() {
        // p = q = r = 1 gives bound 1 and f = k
        let form = GosperForm {
            var: "k".into(),
            p: Polynomial::one(),
            q: Polynomial::one(),
            r: Polynomial::one(),
            f: None,
        };
        assert_eq!(degree_bound(&form), Some(1));
        let f = solve_f(&form, 1).unwrap();
        assert_eq!(f, RationalFunction::from_poly(Polynomial::var("k")));
    }

    #[test]
    fn gosper_binomial_k_n() {
        // gosper(binomial(k,n), k) = (k+1) binomial(k,n) / (n+1)
        let a = parse("binomial(k,n)").unwrap();
        let got = gosper(&a, "k").unwrap();
        let expect = parse("(k + 1)*binomial(k,n)/(n + 1)").unwrap();
        // compare modulo additive constants: difference telescopes to zero
        assert!(antidifferences_match(&got.g, &expect, &a, "k"));
    }

    #[test]
    fn gosper_one_over_k_fails() {
        let a = parse("1/k").unwrap();
        assert!(matches!(gosper(&a, "k"), Err(Error::GosperNoClosedForm)));
    }

    #[test]
    fn gosper_factorial_fails() {
        let a = parse("factorial(k)").unwrap();
        assert!(matches!(gosper(&a, "k"), Err(Error::GosperNoClosedForm)));
    }

    #[test]
    fn gosper_binomial_n_k_in_k_fails() {
        let a = parse("binomial(n,k)").unwrap();
        assert!(matches!(gosper(&a, "k"), Err(Error::GosperNoClosedForm)));
    }

    #[test]
    fn gosper_not_applicable() {
        let a = parse("factorial(k/2)").unwrap();
        assert!(matches!(gosper(&a, "k"), Err(Error::GosperNotApplicable)));
    }

    #[test]
    fn definite_arithmetic_series() {
        // sum_{k=1}^{n} k = n(n+1)/2
        let a = parse("k").unwrap();
        let s = gosper_definite(&a, "k", &Expr::int(1), &Expr::sym("n")).unwrap();
        let expect = parse("n*(n+1)/2").unwrap();
        assert_eq!(s.canonical(), expect.canonical());
    }

    #[test]
    fn upward_direction_shifts() {
        // down: g(k) - g(k-1) = a(k); up: g(k+1) - g(k) = a(k)
        let a = parse("k").unwrap();
        let up = gosper_with(&a, "k", Direction::Up, &mut Trace::off()).unwrap();
        // check numerically: g(k+1) - g(k) - a(k) = 0
        let g1 = up.g.shift_symbol("k", 1);
        let diff = Expr::sub2(Expr::sub2(g1, up.g.clone()), a.clone());
        assert!(diff.canonical().is_zero_lit());
    }

    /// Both g1 and g2 are antidifferences of a: their difference has zero
    /// downward difference.
    pub(crate) fn antidifferences_match(g1: &Expr, g2: &Expr, _a: &Expr, var: &str) -> bool {
        let d = Expr::sub2(g1.clone(), g2.clone());
        let dd = Expr::sub2(d.clone(), d.shift_symbol(var, -1));
        match simplify_combinatorial(&dd) {
            Ok(z) => z.canonical().is_zero_lit(),
            Err(_) => false,
        }
    }
}
