//! Zeilberger's creative telescoping: holonomic recurrences for definite
//! hypergeometric sums.
//!
//! For s(n) = sum_k F(n,k), find sigma_0..sigma_J (rational in n) and G with
//!
//! ```text
//! sum_j sigma_j(n) F(n-j, k) = G(n, k) - G(n, k-1)
//! ```
//!
//! so summing over all integers k yields sum_j sigma_j(n) s(n-j) = 0. The
//! inner step is parametrized Gosper: the sigma-linear combination divided by
//! F(n,k) is rational in k, its known part goes through the normal-form
//! decomposition, and the sigma_j join f's undetermined coefficients in one
//! linear system.

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::expr::{factored_to_expr, poly_to_expr, Expr};
use crate::field::{
    factor_polynomial, poly_gcd, FactorProduct, Polynomial, Rat, RationalFunction,
};
use crate::gosper::{degree_bound_for, gpp_decompose, operator_rows, poly_from_coeff_solution, GosperForm};
use crate::simplify::{term_ratio, Direction, TermRatio};
use crate::trace::Trace;

pub const DEFAULT_MAX_ORDER: usize = 5;

/// Recurrence orientation: `Down` relates sum(n-J)..sum(n), `Up` relates
/// sum(n)..sum(n+J).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecDirection {
    Down,
    Up,
}

/// Holonomic recurrence: polynomial coefficients applied to shifted sum
/// values, stored in ascending argument order.
///
/// Down: `coefficients[i]` multiplies sum(var - order + i).
/// Up:   `coefficients[i]` multiplies sum(var + i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    pub var: String,
    pub order: usize,
    pub direction: RecDirection,
    pub coefficients: Vec<Polynomial>,
}

impl Recurrence {
    /// Normalize: trim zero end coefficients (shifting the variable so the
    /// highest argument stays sum(var) resp. sum(var+J)), remove content and
    /// common polynomial factors, and fix the sign so the highest-argument
    /// coefficient has a positive leading coefficient.
    pub fn new(
        var: &str,
        direction: RecDirection,
        mut coefficients: Vec<Polynomial>,
    ) -> Result<Self> {
        // ascending argument order; trim zeros at both ends
        while coefficients.last().map(|c| c.is_zero()).unwrap_or(false) {
            coefficients.pop();
            // down form must keep its highest argument at sum(var): the
            // relation holds for all var, so substitute var -> var + 1
            if direction == RecDirection::Down {
                for c in coefficients.iter_mut() {
                    *c = c.shift_int(var, 1);
                }
            }
        }
        let mut lead_trim = 0usize;
        while coefficients.first().map(|c| c.is_zero()).unwrap_or(false) {
            coefficients.remove(0);
            lead_trim += 1;
        }
        if direction == RecDirection::Up && lead_trim > 0 {
            for c in coefficients.iter_mut() {
                *c = c.shift_int(var, -(lead_trim as i64));
            }
        }
        if coefficients.len() < 2 {
            return Err(Error::InvalidInput(
                "recurrence degenerates to a single term".into(),
            ));
        }
        // remove common polynomial factor and rational content
        let mut g = Polynomial::zero();
        for c in &coefficients {
            g = poly_gcd(&g, c);
            if g.is_one() {
                break;
            }
        }
        if !g.is_one() && !g.is_zero() {
            for c in coefficients.iter_mut() {
                *c = c.exact_div(&g).expect("gcd divides");
            }
        }
        let mut content = Rat::zero();
        for c in &coefficients {
            let cc = c.content_rat();
            content = if content.is_zero() {
                cc
            } else {
                rat_gcd(&content, &cc)
            };
        }
        if !content.is_zero() && !content.is_one() {
            let inv = content.recip();
            for c in coefficients.iter_mut() {
                *c = c.scale(&inv);
            }
        }
        if coefficients
            .last()
            .map(|c| c.leading_coeff().is_negative())
            .unwrap_or(false)
        {
            for c in coefficients.iter_mut() {
                *c = c.neg();
            }
        }
        Ok(Recurrence {
            var: var.to_string(),
            order: coefficients.len() - 1,
            direction,
            coefficients,
        })
    }

    /// Coefficient of sum(var + shift); zero outside the stored range.
    pub fn coeff_of_shift(&self, shift: i64) -> Polynomial {
        let idx = match self.direction {
            RecDirection::Down => shift + self.order as i64,
            RecDirection::Up => shift,
        };
        if idx < 0 || idx as usize >= self.coefficients.len() {
            Polynomial::zero()
        } else {
            self.coefficients[idx as usize].clone()
        }
    }

    /// Shifts in ascending order.
    pub fn shifts(&self) -> Vec<i64> {
        match self.direction {
            RecDirection::Down => (0..=self.order as i64)
                .map(|i| i - self.order as i64)
                .collect(),
            RecDirection::Up => (0..=self.order as i64).collect(),
        }
    }

    /// Render with factored or expanded coefficients; the overall sign makes
    /// the first printed term positive.
    pub fn display(&self, factored: bool) -> String {
        let mut flip = false;
        if let Some(first) = self.coefficients.iter().find(|c| !c.is_zero()) {
            flip = first.leading_coeff().is_negative();
        }
        let mut out = String::new();
        for (i, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = if flip { c.neg() } else { c.clone() };
            let shift = self.shifts()[i];
            let sum_tok = if shift == 0 {
                format!("sum({})", self.var)
            } else if shift > 0 {
                format!("sum({} + {})", self.var, shift)
            } else {
                format!("sum({} - {})", self.var, -shift)
            };
            let (neg, body) = coeff_term_string(&c, &sum_tok, factored);
            if out.is_empty() {
                if neg {
                    out.push_str("- ");
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&body);
        }
        out
    }
}

fn coeff_term_string(c: &Polynomial, sum_tok: &str, factored: bool) -> (bool, String) {
    if let Some(r) = c.as_constant() {
        let neg = r.is_negative();
        let mag = if neg { -r } else { r };
        if mag.is_one() {
            return (neg, sum_tok.to_string());
        }
        return (neg, format!("{}*{}", fmt_rat(&mag), sum_tok));
    }
    if factored {
        let f = factor_polynomial(c);
        let neg = f.coeff.is_negative();
        let mut f_abs = f;
        if neg {
            f_abs.coeff = -f_abs.coeff;
        }
        let e = factored_to_expr(&f_abs);
        let body = crate::expr::print(&e);
        if matches!(e, Expr::Add(_)) {
            (neg, format!("({})*{}", body, sum_tok))
        } else {
            (neg, format!("{}*{}", body, sum_tok))
        }
    } else {
        let neg = c.leading_coeff().is_negative();
        let cc = if neg { c.neg() } else { c.clone() };
        let needs_paren = cc.num_terms() > 1;
        let body = crate::expr::print(&poly_to_expr(&cc));
        if needs_paren {
            (neg, format!("({})*{}", body, sum_tok))
        } else {
            (neg, format!("{}*{}", body, sum_tok))
        }
    }
}

fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn rat_gcd(a: &Rat, b: &Rat) -> Rat {
    use num::Integer;
    Rat::new(a.numer().gcd(b.numer()), a.denom().lcm(b.denom()))
}

/// The certificate data behind a successful telescoping run.
#[derive(Clone, Debug)]
pub struct ZeilbergerCertificate {
    pub order: usize,
    /// sigma_0..sigma_J, cleared to polynomials in n (as rational functions).
    pub sigma: Vec<RationalFunction>,
    /// Final Gosper representation of the combined term.
    pub form: GosperForm,
}

/// Result of `sumrecursion`: the recurrence and its certificate.
#[derive(Clone, Debug)]
pub struct SumRecursion {
    pub recurrence: Recurrence,
    pub certificate: ZeilbergerCertificate,
}

#[derive(Clone, Debug)]
pub struct SumOptions {
    pub max_order: usize,
    pub fixed_order: Option<usize>,
    pub direction: RecDirection,
}

impl Default for SumOptions {
    fn default() -> Self {
        SumOptions {
            max_order: DEFAULT_MAX_ORDER,
            fixed_order: None,
            direction: RecDirection::Down,
        }
    }
}

/// Holonomic recurrence in `n` for sum over all integers k of F(n,k).
pub fn sumrecursion(f: &Expr, k: &str, n: &str, fixed_order: Option<usize>) -> Result<Recurrence> {
    let opts = SumOptions {
        fixed_order,
        ..SumOptions::default()
    };
    Ok(sumrecursion_with(f, k, n, &opts, &mut Trace::off())?.recurrence)
}

pub fn sumrecursion_with(
    f: &Expr,
    k: &str,
    n: &str,
    opts: &SumOptions,
    trace: &mut Trace,
) -> Result<SumRecursion> {
    if k == n {
        return Err(Error::InvalidInput(
            "summation and recurrence variables must differ".into(),
        ));
    }
    let rn = term_ratio(f, n, Direction::Down)
        .map_err(|_| Error::ZeilbergerNotApplicable)?;
    let rk = term_ratio(f, k, Direction::Down)
        .map_err(|_| Error::ZeilbergerNotApplicable)?;
    trace.line(format!(
        "F({n},{k})/F({n}-1,{k}):= {}",
        ratio_display(&rn.ratio),
        n = n,
        k = k
    ));
    trace.line(format!(
        "F({n},{k})/F({n},{k}-1):= {}",
        ratio_display(&rk.ratio),
        n = n,
        k = k
    ));
    trace.line("Zeilberger algorithm applicable");
    let orders: Vec<usize> = match opts.fixed_order {
        Some(j) => vec![j],
        None => (1..=opts.max_order).collect(),
    };
    for &order in &orders {
        if order == 0 {
            continue;
        }
        trace.line(format!("applying Zeilberger algorithm for order:= {}", order));
        if let Some(mut result) = try_order(&rk, &rn, k, n, order, trace)? {
            if opts.direction == RecDirection::Up {
                result.recurrence = to_direction(&result.recurrence, RecDirection::Up);
            }
            return Ok(result);
        }
    }
    Err(Error::ZeilbergerOrderExceeded)
}

/// Attempt one order J; `Ok(None)` means no telescoping relation at this
/// order.
fn try_order(
    rk: &TermRatio,
    rn: &TermRatio,
    k: &str,
    n: &str,
    order: usize,
    trace: &mut Trace,
) -> Result<Option<SumRecursion>> {
    let j_count = order + 1;
    // split the n-ratio into numerator/denominator factor products
    let mut n_num = FactorProduct::one();
    let mut n_den = FactorProduct::one();
    for (p, e) in rn.flist.factors() {
        if *e > 0 {
            n_num.mul_poly(p, *e);
        } else {
            n_den.mul_poly(p, -*e);
        }
    }
    let c = rn.flist.coeff().clone();

    // u_j = c^{-j} * prod_{i<j} D(n-i) * prod_{j<=i<J} N(n-i); V = prod_{i<J} N(n-i)
    let mut u: Vec<FactorProduct> = Vec::with_capacity(j_count);
    let mut v = FactorProduct::one();
    for j in 0..j_count {
        let mut uj = FactorProduct::from_rat(pow_rat(&c, -(j as i64)));
        for i in 0..j {
            uj.mul(&n_den.shift_int(n, -(i as i64)));
        }
        for i in j..order {
            uj.mul(&n_num.shift_int(n, -(i as i64)));
        }
        u.push(uj);
    }
    for i in 0..order {
        v.mul(&n_num.shift_int(n, -(i as i64)));
    }

    // known part of the combined ratio: rho = rk * V(k-1)/V(k)
    let mut rho = rk.flist.clone();
    rho.mul(&v.shift_int(k, -1));
    rho.mul(&v.invert()?);
    rho.reduce();
    let rho_ratio = TermRatio {
        var: k.to_string(),
        direction: Direction::Down,
        ratio: rho.to_ratfun(),
        flist: rho,
    };
    let form0 = gpp_decompose(&rho_ratio);
    debug_assert!(form0.matches_ratio(&rho_ratio));

    // sigma-linear p parts: p_j = u_j * p0
    let mut p_parts: Vec<Polynomial> = Vec::with_capacity(j_count);
    for uj in &u {
        let rf = uj.to_ratfun();
        let poly = rf
            .num()
            .scale(&rf.den().as_constant().expect("k-free constant").recip());
        p_parts.push(poly.mul(&form0.p));
    }
    let p_deg = p_parts.iter().map(|p| p.degree_in(k)).max().unwrap_or(-1);
    let d = match degree_bound_for(p_deg, &form0.q, &form0.r, k) {
        Some(d) => d,
        None => return Ok(None),
    };

    let (op_rows, f_width) = operator_rows(&form0.q, &form0.r, d, k);
    let p_coeffs: Vec<Vec<Polynomial>> = p_parts.iter().map(|p| p.coeffs_in(k)).collect();
    let height = op_rows
        .len()
        .max(p_coeffs.iter().map(|c| c.len()).max().unwrap_or(0));

    for t in 0..j_count {
        // unknowns: sigma_j (j != t, sigma_t = 1), then f's coefficients
        let sigma_cols: Vec<usize> = (0..j_count).filter(|&j| j != t).collect();
        let width = sigma_cols.len() + f_width;
        let mut matrix: Vec<Vec<RationalFunction>> = Vec::with_capacity(height);
        let mut rhs: Vec<RationalFunction> = Vec::with_capacity(height);
        for m in 0..height {
            let mut row = Vec::with_capacity(width);
            for &j in &sigma_cols {
                row.push(RationalFunction::from_poly(
                    p_coeffs[j].get(m).cloned().unwrap_or_else(Polynomial::zero),
                ));
            }
            for i in 0..f_width {
                let entry = op_rows
                    .get(m)
                    .map(|r| r[i].clone())
                    .unwrap_or_else(Polynomial::zero);
                row.push(RationalFunction::from_poly(entry.neg()));
            }
            matrix.push(row);
            rhs.push(RationalFunction::from_poly(
                p_coeffs[t]
                    .get(m)
                    .cloned()
                    .unwrap_or_else(Polynomial::zero)
                    .neg(),
            ));
        }
        let sol = match crate::field::solve_linear_system(&matrix, &rhs) {
            Ok(s) => s,
            Err(Error::NoSolution) => continue,
            Err(e) => return Err(e),
        };
        // assemble sigma (sigma_t = 1) and f
        let mut sigma: Vec<RationalFunction> = vec![RationalFunction::zero(); j_count];
        sigma[t] = RationalFunction::one();
        for (pos, &j) in sigma_cols.iter().enumerate() {
            sigma[j] = sol[pos].clone();
        }
        let f_rf = poly_from_coeff_solution(&sol[sigma_cols.len()..], k);

        // clear denominators: lambda = lcm of sigma denominators (k-free)
        let mut lambda = Polynomial::one();
        for s in &sigma {
            let g = poly_gcd(&lambda, s.den());
            lambda = lambda.mul(&s.den().exact_div(&g).expect("gcd divides"));
        }
        let cleared: Vec<Polynomial> = sigma
            .iter()
            .map(|s| {
                s.num()
                    .mul(&lambda.exact_div(s.den()).expect("lcm multiple"))
            })
            .collect();
        // recurrence coefficients in ascending argument order: sigma_J..sigma_0
        let coeffs: Vec<Polynomial> = cleared.iter().rev().cloned().collect();
        let recurrence = Recurrence::new(n, RecDirection::Down, coeffs)?;

        // certificate p = sum cleared_j p_j (a polynomial), f scaled by lambda
        let mut p_cert = Polynomial::zero();
        for (j, s) in cleared.iter().enumerate() {
            p_cert = p_cert.add(&s.mul(&p_parts[j]));
        }
        let f_cert = f_rf.mul(&RationalFunction::from_poly(lambda.clone()));

        if trace.enabled() {
            trace_sigma_p(trace, &p_parts, t, k, n);
            trace.line(format!("q:= {}", crate::gosper::poly_display(&form0.q)));
            trace.line(format!("r:= {}", crate::gosper::poly_display(&form0.r)));
            trace.line(format!("degreebound := {}", d));
            trace.line(format!("f:= {}", ratio_display(&f_rf)));
            // resolved p in the cleared scale, displayed over lambda
            let p_disp = if lambda.is_one() {
                crate::gosper::poly_display(&p_cert)
            } else {
                let e = Expr::Mul(vec![
                    poly_to_expr(&p_cert),
                    Expr::Pow(Box::new(poly_to_expr(&lambda)), Box::new(Expr::int(-1))),
                ]);
                crate::expr::print(&e)
            };
            trace.line(format!("p:= {}", p_disp));
            trace.line("Zeilberger algorithm successful");
        }
        let form = GosperForm {
            var: k.to_string(),
            p: p_cert,
            q: form0.q.clone(),
            r: form0.r.clone(),
            f: Some(f_cert),
        };
        debug_assert!(form.certificate_holds());
        let certificate = ZeilbergerCertificate {
            order,
            sigma: cleared
                .into_iter()
                .map(RationalFunction::from_poly)
                .collect(),
            form,
        };
        return Ok(Some(SumRecursion {
            recurrence,
            certificate,
        }));
    }
    Ok(None)
}

fn trace_sigma_p(trace: &mut Trace, p_parts: &[Polynomial], t: usize, _k: &str, _n: &str) {
    if !trace.enabled() {
        return;
    }
    let mut p_sym = p_parts[t].clone();
    for (j, part) in p_parts.iter().enumerate() {
        if j == t {
            continue;
        }
        let sym = Polynomial::var(&format!("~sigma{}", j));
        p_sym = p_sym.add(&sym.mul(part));
    }
    let mut line = format!("p:= {}", crate::gosper::poly_display(&p_sym));
    for j in (0..p_parts.len()).rev() {
        line = line.replace(&format!("~sigma{}", j), &format!("zb_sigma({})", j));
    }
    trace.line(line);
}

fn ratio_display(r: &RationalFunction) -> String {
    let (num, den) = crate::gosper::integer_pair(r);
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

fn pow_rat(base: &Rat, e: i64) -> Rat {
    let mut acc = Rat::one();
    let mut b = if e < 0 { base.recip() } else { base.clone() };
    let mut m = e.unsigned_abs();
    while m > 0 {
        if m & 1 == 1 {
            acc *= &b;
        }
        m >>= 1;
        if m > 0 {
            b = &b * &b;
        }
    }
    acc
}

/// Convert between downward and upward forms by shifting the variable.
pub fn to_direction(rec: &Recurrence, direction: RecDirection) -> Recurrence {
    if rec.direction == direction {
        return rec.clone();
    }
    let delta = match direction {
        RecDirection::Up => rec.order as i64,
        RecDirection::Down => -(rec.order as i64),
    };
    let coeffs: Vec<Polynomial> = rec
        .coefficients
        .iter()
        .map(|c| c.shift_int(&rec.var, delta))
        .collect();
    Recurrence::new(&rec.var, direction, coeffs).expect("shift preserves shape")
}

/// Closed form of a first-order recurrence: s(n) = s0 * prod_{m=1}^{n}
/// (-p(m)/q(m)), in Pochhammer terms when the coefficients split into linear
/// factors, otherwise as a formal product.
pub fn first_order_closed_form(rec: &Recurrence, s0: &Expr) -> Result<Expr> {
    let rec = to_direction(rec, RecDirection::Down);
    if rec.order != 1 {
        return Err(Error::InvalidInput(format!(
            "closed form needs an order-1 recurrence, got order {}",
            rec.order
        )));
    }
    let p = &rec.coefficients[0]; // sum(n-1)
    let q = &rec.coefficients[1]; // sum(n)
    if q.is_zero() {
        return Err(Error::DegenerateRecurrence);
    }
    // s(n)/s(n-1) = -p(n)/q(n)
    let num_f = factor_polynomial(&p.neg());
    let den_f = factor_polynomial(q);
    let var = rec.var.clone();
    let mut factors: Vec<Expr> = vec![s0.clone()];
    let ratio_coeff = &num_f.coeff / &den_f.coeff;
    push_constant_power(&mut factors, &ratio_coeff, &var);
    for (poly, mult) in &num_f.factors {
        push_product_factor(&mut factors, poly, *mult as i64, &var)?;
    }
    for (poly, mult) in &den_f.factors {
        push_product_factor(&mut factors, poly, -(*mult as i64), &var)?;
    }
    Ok(Expr::mul(factors))
}

fn push_constant_power(factors: &mut Vec<Expr>, c: &Rat, var: &str) {
    if c.is_one() {
        return;
    }
    factors.push(Expr::pow(Expr::from_rat(c.clone()), Expr::sym(var)));
}

/// prod_{m=1}^{var} poly(m) ^ mult, in Pochhammer form when poly is linear
/// in var.
fn push_product_factor(
    factors: &mut Vec<Expr>,
    poly: &Polynomial,
    mult: i64,
    var: &str,
) -> Result<()> {
    if !poly.contains_var(var) {
        // constant with respect to the recurrence variable: poly^var
        let base = poly_to_expr(poly).canonical();
        factors.push(Expr::pow(
            Expr::pow(base, Expr::sym(var)),
            Expr::int(mult),
        ));
        return Ok(());
    }
    if poly.degree_in(var) == 1 {
        let coeffs = poly.coeffs_in(var);
        let alpha = coeffs[1]
            .as_constant()
            .ok_or_else(|| Error::InvalidInput("nonlinear leading coefficient".into()))?;
        let beta = coeffs[0].clone();
        // prod_{m=1}^{n} (alpha m + beta) = alpha^n * pochhammer(beta/alpha + 1, n)
        if !alpha.is_one() {
            factors.push(Expr::pow(
                Expr::pow(Expr::from_rat(alpha.clone()), Expr::sym(var)),
                Expr::int(mult),
            ));
        }
        let shift = poly_to_expr(&beta.scale(&alpha.recip())).canonical();
        let poch = Expr::pochhammer(
            Expr::add2(shift, Expr::int(1)),
            Expr::sym(var),
        );
        factors.push(Expr::pow(poch, Expr::int(mult)));
        return Ok(());
    }
    // formal product over a fresh index
    let body_var = fresh_index(poly, var);
    let body = poly_to_expr(&poly.substitute(var, &Polynomial::var(&body_var))).canonical();
    let prod = Expr::prod(body, &body_var, Expr::int(1), Expr::sym(var));
    factors.push(Expr::pow(prod, Expr::int(mult)));
    Ok(())
}

fn fresh_index(poly: &Polynomial, var: &str) -> String {
    for cand in ["m", "j", "i", "m1", "j1"] {
        if cand != var && !poly.contains_var(cand) {
            return cand.to_string();
        }
    }
    "m2".to_string()
}

/// Structural equality after direction alignment and normalization.
pub fn recurrences_equal(r1: &Recurrence, r2: &Recurrence) -> bool {
    if r1.var != r2.var {
        return false;
    }
    let r2 = to_direction(r2, r1.direction);
    r1.order == r2.order && r1.coefficients == r2.coefficients
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn rec_of(text: &str, k: &str, n: &str) -> Recurrence {
        sumrecursion(&parse(text).unwrap(), k, n, None).unwrap()
    }

    fn rec_from_str(var: &str, coeff_texts: &[&str]) -> Recurrence {
        // ascending argument order, down direction
        let coeffs: Vec<Polynomial> = coeff_texts
            .iter()
            .map(|t| {
                crate::expr::expr_to_ratfun(&parse(t).unwrap())
                    .unwrap()
                    .num()
                    .clone()
            })
            .collect();
        Recurrence::new(var, RecDirection::Down, coeffs).unwrap()
    }

    #[test]
    fn binomial_row_sum() {
        // sum_k binomial(n,k) = 2^n: 2 sum(n-1) - sum(n) = 0
        let rec = rec_of("binomial(n,k)", "k", "n");
        let expect = rec_from_str("n", &["2", "-1"]);
        assert!(recurrences_equal(&rec, &expect));
        assert_eq!(rec.display(true), "2*sum(n - 1) - sum(n)");
    }

    #[test]
    fn binomial_square_order_one() {
        // paper trace example: n sum(n) = (4n-2) sum(n-1)
        let rec = rec_of("binomial(n,k)^2", "k", "n");
        let expect = rec_from_str("n", &["4*n - 2", "-n"]);
        assert!(recurrences_equal(&rec, &expect));
    }

    #[test]
    fn upward_direction_matches_paper() {
        // up form of the previous: sum(n+1)*(n+1) - (4n+2) sum(n)
        let rec = rec_of("binomial(n,k)^2", "k", "n");
        let up = to_direction(&rec, RecDirection::Up);
        let expect_up = Recurrence::new(
            "n",
            RecDirection::Up,
            vec![
                crate::expr::expr_to_ratfun(&parse("-(4*n + 2)").unwrap())
                    .unwrap()
                    .num()
                    .clone(),
                crate::expr::expr_to_ratfun(&parse("n + 1").unwrap())
                    .unwrap()
                    .num()
                    .clone(),
            ],
        )
        .unwrap();
        assert!(recurrences_equal(&up, &expect_up));
        // round trip
        let back = to_direction(&up, RecDirection::Down);
        assert!(recurrences_equal(&back, &rec));
    }

    #[test]
    fn cube_sum_order_two() {
        // 8(n-1)^2 sum(n-2) + (7n^2-7n+2) sum(n-1) - n^2 sum(n)
        let rec = rec_of("binomial(n,k)^3", "k", "n");
        let expect = rec_from_str("n", &["8*(n-1)^2", "7*n^2 - 7*n + 2", "-n^2"]);
        assert!(recurrences_equal(&rec, &expect));
    }

    #[test]
    fn closed_form_power_of_two() {
        let rec = rec_from_str("n", &["2", "-1"]);
        let s = first_order_closed_form(&rec, &Expr::one()).unwrap();
        assert_eq!(s, parse("2^n").unwrap());
    }

    #[test]
    fn closed_form_vandermonde() {
        // (n-1+c-b) sum(n-1) - (n-1+c) sum(n) -> pochhammer(c-b,n)/pochhammer(c,n)
        let rec = rec_from_str("n", &["n - 1 + c - b", "-(n - 1 + c)"]);
        let s = first_order_closed_form(&rec, &Expr::one()).unwrap();
        let expect = parse("pochhammer(c - b, n)/pochhammer(c, n)").unwrap();
        assert!(crate::simplify::values_equal(&s, &expect));
    }

    #[test]
    fn closed_form_constant_solution() {
        let rec = rec_from_str("n", &["1", "-1"]);
        let s = first_order_closed_form(&rec, &Expr::sym("v")).unwrap();
        assert_eq!(s, Expr::sym("v"));
    }

    #[test]
    fn degenerate_recurrence_error() {
        let r = Recurrence {
            var: "n".into(),
            order: 1,
            direction: RecDirection::Down,
            coefficients: vec![Polynomial::one(), Polynomial::zero()],
        };
        assert!(matches!(
            first_order_closed_form(&r, &Expr::one()),
            Err(Error::DegenerateRecurrence)
        ));
    }

    #[test]
    fn scaled_recurrences_equal() {
        let r1 = rec_from_str("n", &["2", "-1"]);
        let r2 = rec_from_str("n", &["14", "-7"]);
        assert!(recurrences_equal(&r1, &r2));
        let r3 = rec_from_str("n", &["1", "-1"]);
        assert!(!recurrences_equal(&r1, &r3));
    }

    #[test]
    fn order_exceeded_then_success_at_six() {
        let f = parse("binomial(n,k)*binomial(6*k,n)").unwrap();
        assert!(matches!(
            sumrecursion(&f, "k", "n", None),
            Err(Error::ZeilbergerOrderExceeded)
        ));
        let rec = sumrecursion(&f, "k", "n", Some(6)).unwrap();
        assert_eq!(rec.order, 6);
    }

    #[test]
    fn not_applicable_for_half_shift() {
        let f = parse("binomial(n/2,k)").unwrap();
        assert!(matches!(
            sumrecursion(&f, "k", "n", None),
            Err(Error::ZeilbergerNotApplicable)
        ));
    }
}
