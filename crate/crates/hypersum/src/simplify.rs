//! Hypergeometric term recognition and the simplification operators.
//!
//! Everything here runs through one normal form: an expression is decomposed
//! into a rational prefactor, power factors base^(exponent), gamma factors
//! gamma(arg)^mult, and product factors prod(...)^mult. Factorials, binomial
//! coefficients and Pochhammer symbols convert into gamma terms; sums of
//! similar gamma products combine over a pivot. Repeated application of
//! gamma(a+1) = a*gamma(a) merges all gamma arguments with integer
//! difference, which decides rationality for integer-linear gamma product
//! ratios, and in particular yields exact term ratios a(k)/a(k-1).

use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::expr::{expr_to_ratfun, Expr, Substitution};
use crate::field::{FactorProduct, Polynomial, Rat, RationalFunction};

/// Ratio orientation: `Down` is a(k)/a(k-1), `Up` is a(k+1)/a(k).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Down,
    Up,
}

/// Exact term ratio of a hypergeometric term.
#[derive(Clone, Debug)]
pub struct TermRatio {
    pub var: String,
    pub direction: Direction,
    /// Fully reduced; coefficients rational in the parameters.
    pub ratio: RationalFunction,
    /// The same ratio with its factor structure preserved.
    pub(crate) flist: FactorProduct,
}

/// Multiplicative normal form: rational prefactor x powers x gamma terms x
/// products.
#[derive(Clone, Debug)]
pub struct GammaProduct {
    pub(crate) rat: FactorProduct,
    /// (base, exponent); bases merge only when structurally equal.
    pub(crate) powers: Vec<(Expr, Expr)>,
    /// (argument, multiplicity)
    pub(crate) gammas: Vec<(Expr, i64)>,
    /// (body, index, lower, upper, multiplicity)
    pub(crate) prods: Vec<(Expr, String, Expr, Expr, i64)>,
}

impl GammaProduct {
    fn one() -> Self {
        GammaProduct {
            rat: FactorProduct::one(),
            powers: Vec::new(),
            gammas: Vec::new(),
            prods: Vec::new(),
        }
    }

    fn from_flist(rat: FactorProduct) -> Self {
        GammaProduct {
            rat,
            powers: Vec::new(),
            gammas: Vec::new(),
            prods: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero()
    }

    /// The rational prefactor in lowest terms.
    pub fn prefactor(&self) -> RationalFunction {
        self.rat.to_ratfun()
    }

    pub fn gamma_factors(&self) -> &[(Expr, i64)] {
        &self.gammas
    }

    pub fn power_factors(&self) -> &[(Expr, Expr)] {
        &self.powers
    }

    /// True when nothing but the rational prefactor remains.
    pub fn is_rational(&self) -> bool {
        self.powers.is_empty() && self.gammas.is_empty() && self.prods.is_empty()
    }

    fn push_gamma(&mut self, arg: Expr, mult: i64) {
        if mult == 0 || self.is_zero() {
            return;
        }
        for (a, m) in self.gammas.iter_mut() {
            if *a == arg {
                *m += mult;
                if *m == 0 {
                    let a = a.clone();
                    self.gammas.retain(|(x, _)| x != &a);
                }
                return;
            }
        }
        self.gammas.push((arg, mult));
    }

    fn push_power(&mut self, base: Expr, exp: Expr) {
        if self.is_zero() {
            return;
        }
        for (b, e) in self.powers.iter_mut() {
            if *b == base {
                *e = Expr::add2(e.clone(), exp);
                if e.is_zero_lit() {
                    let b = b.clone();
                    self.powers.retain(|(x, _)| x != &b);
                }
                return;
            }
        }
        self.powers.push((base, exp));
    }

    fn push_prod(&mut self, body: Expr, idx: String, lo: Expr, hi: Expr, mult: i64) {
        if mult == 0 || self.is_zero() {
            return;
        }
        for (b, i, l, h, m) in self.prods.iter_mut() {
            if *b == body && *i == idx && *l == lo && *h == hi {
                *m += mult;
                if *m == 0 {
                    let key = (b.clone(), i.clone(), l.clone(), h.clone());
                    self.prods
                        .retain(|(bb, ii, ll, hh, _)| (bb, ii, ll, hh) != (&key.0, &key.1, &key.2, &key.3));
                }
                return;
            }
        }
        self.prods.push((body, idx, lo, hi, mult));
    }

    fn mul(&mut self, other: GammaProduct) {
        if self.is_zero() {
            return;
        }
        if other.is_zero() {
            *self = GammaProduct::from_flist(FactorProduct::zero());
            return;
        }
        self.rat.mul(&other.rat);
        for (b, e) in other.powers {
            self.push_power(b, e);
        }
        for (a, m) in other.gammas {
            self.push_gamma(a, m);
        }
        for (b, i, l, h, m) in other.prods {
            self.push_prod(b, i, l, h, m);
        }
    }

    fn pow(&self, e: i64) -> Result<GammaProduct> {
        Ok(GammaProduct {
            rat: self.rat.pow_i64(e)?,
            powers: self
                .powers
                .iter()
                .map(|(b, x)| (b.clone(), Expr::mul2(Expr::int(e), x.clone())))
                .collect(),
            gammas: self.gammas.iter().map(|(a, m)| (a.clone(), m * e)).collect(),
            prods: self
                .prods
                .iter()
                .map(|(b, i, l, h, m)| (b.clone(), i.clone(), l.clone(), h.clone(), m * e))
                .collect(),
        })
    }

    fn div(&self, other: &GammaProduct) -> Result<GammaProduct> {
        let mut out = self.clone();
        out.mul(other.pow(-1)?);
        Ok(out)
    }

    /// Apply a substitution to every component.
    fn substitute(&self, s: &Substitution) -> Result<GammaProduct> {
        let mut out = GammaProduct::one();
        // the rational part goes through Expr-land only when the replacement
        // is not polynomial; shifts are
        let repl_rf = s
            .replacement()
            .to_ratfun()
            .ok_or_else(|| Error::NotGammaRepresentable("non-rational substitution".into()))?;
        let repl_poly = repl_rf
            .to_poly()
            .cloned()
            .ok_or_else(|| Error::NotGammaRepresentable("non-polynomial substitution".into()))?;
        out.rat = self.rat.substitute_var(s.target(), &repl_poly);
        for (b, e) in &self.powers {
            out.push_power(b.substitute(s), e.substitute(s));
        }
        for (a, m) in &self.gammas {
            out.push_gamma(a.substitute(s), *m);
        }
        for (b, i, l, h, m) in &self.prods {
            // Expr-level substitution handles binding and capture
            let pe = Expr::Prod(
                Box::new(b.clone()),
                i.clone(),
                Box::new(l.clone()),
                Box::new(h.clone()),
            )
            .substitute(s);
            match pe {
                Expr::Prod(b2, i2, l2, h2) => out.push_prod(*b2, i2, *l2, *h2, *m),
                other => {
                    // bounds became numeric and the product expanded
                    let gp = decompose(&other)?;
                    out.mul(gp.pow(*m)?);
                }
            }
        }
        Ok(out)
    }
}

/// Decompose an expression into the multiplicative normal form.
///
/// Sums whose members have pairwise rational ratios combine over the first
/// member; other sums are not representable.
pub(crate) fn decompose(e: &Expr) -> Result<GammaProduct> {
    match e {
        Expr::Integer(_) | Expr::Rational(_) => Ok(GammaProduct::from_flist(
            FactorProduct::from_rat(e.as_rat().unwrap()),
        )),
        Expr::Symbol(s) => Ok(GammaProduct::from_flist(FactorProduct::from_poly(
            &Polynomial::var(s),
        ))),
        Expr::SumRef(_) => Err(Error::NotGammaRepresentable(
            "sum(...) recurrence token inside a summand".into(),
        )),
        Expr::Add(ops) => {
            if let Some(rf) = expr_to_ratfun(e) {
                return Ok(GammaProduct::from_flist(FactorProduct::from_ratfun(&rf)));
            }
            let parts: Vec<GammaProduct> =
                ops.iter().map(decompose).collect::<Result<_>>()?;
            let pivot = parts[0].clone();
            let mut total = RationalFunction::one();
            for part in parts.iter().skip(1) {
                let mut delta = part.div(&pivot)?;
                delta = merged(delta)?;
                if !delta.is_rational() {
                    return Err(Error::NotGammaRepresentable(
                        "sum of dissimilar gamma products".into(),
                    ));
                }
                total = total.add(&delta.prefactor());
            }
            let mut out = pivot;
            let mut combined = FactorProduct::from_ratfun(&total);
            combined.reduce();
            out.rat.mul(&combined);
            if out.rat.is_zero() {
                return Ok(GammaProduct::from_flist(FactorProduct::zero()));
            }
            Ok(out)
        }
        Expr::Mul(ops) => {
            let mut out = GammaProduct::one();
            for op in ops {
                out.mul(decompose(op)?);
            }
            Ok(out)
        }
        Expr::Pow(b, ex) => {
            if let Some(c) = ex.as_i64() {
                return decompose(b)?.pow(c);
            }
            let mut out = GammaProduct::one();
            out.push_power((**b).clone(), (**ex).clone());
            Ok(out)
        }
        Expr::Factorial(a) => {
            let mut out = GammaProduct::one();
            out.push_gamma(Expr::add2((**a).clone(), Expr::int(1)), 1);
            Ok(out)
        }
        Expr::Gamma(a) => {
            let mut out = GammaProduct::one();
            out.push_gamma((**a).clone(), 1);
            Ok(out)
        }
        Expr::Binomial(t, b) => {
            // gamma(t+1) / (gamma(b+1) gamma(t-b+1))
            let mut out = GammaProduct::one();
            out.push_gamma(Expr::add2((**t).clone(), Expr::int(1)), 1);
            out.push_gamma(Expr::add2((**b).clone(), Expr::int(1)), -1);
            out.push_gamma(
                Expr::add(vec![(**t).clone(), Expr::neg((**b).clone()), Expr::int(1)]),
                -1,
            );
            Ok(out)
        }
        Expr::Pochhammer(a, c) => {
            // gamma(a+c) / gamma(a)
            let mut out = GammaProduct::one();
            out.push_gamma(Expr::add2((**a).clone(), (**c).clone()), 1);
            out.push_gamma((**a).clone(), -1);
            Ok(out)
        }
        Expr::Prod(body, idx, lo, hi) => {
            let mut out = GammaProduct::one();
            out.push_prod(
                (**body).clone(),
                idx.clone(),
                (**lo).clone(),
                (**hi).clone(),
                1,
            );
            Ok(out)
        }
    }
}

/// Split a canonical expression into (non-constant part, rational constant).
fn split_const(arg: &Expr) -> (Expr, Rat) {
    if let Some(c) = arg.as_rat() {
        return (Expr::zero(), c);
    }
    if let Expr::Add(ops) = arg {
        let mut c = Rat::zero();
        let mut rest = Vec::new();
        for op in ops {
            match op.as_rat() {
                Some(v) => c += v,
                None => rest.push(op.clone()),
            }
        }
        let rest_e = if rest.len() == 1 {
            rest.into_iter().next().unwrap()
        } else {
            Expr::Add(rest)
        };
        return (rest_e, c);
    }
    (arg.clone(), Rat::zero())
}

fn frac_part(r: &Rat) -> Rat {
    r - Rat::from_integer(r.floor().to_integer())
}

const MERGE_SHIFT_LIMIT: i64 = 2000;

/// Merge all gamma arguments with integer difference, fold integer-exponent
/// powers and combinable products.
pub(crate) fn merged(gp: GammaProduct) -> Result<GammaProduct> {
    let mut gp = gp;
    for _round in 0..4 {
        gp = merge_gammas(gp)?;
        gp = merge_powers(gp)?;
        gp = merge_prods(gp)?;
        if gp.is_zero() {
            return Ok(gp);
        }
        if stable(&gp) {
            break;
        }
    }
    gp.rat.reduce();
    Ok(gp)
}

/// True when another merge round cannot make progress: no foldable powers and
/// no gamma pair in the same integer-shift class.
fn stable(gp: &GammaProduct) -> bool {
    for (b, e) in &gp.powers {
        if e.as_i64().is_some() && expr_to_ratfun(b).is_some() {
            return false;
        }
    }
    for i in 0..gp.gammas.len() {
        for j in (i + 1)..gp.gammas.len() {
            let (r1, c1) = split_const(&gp.gammas[i].0);
            let (r2, c2) = split_const(&gp.gammas[j].0);
            if r1 == r2 && (&c1 - &c2).denom().is_one() {
                return false;
            }
        }
    }
    true
}

fn merge_gammas(gp: GammaProduct) -> Result<GammaProduct> {
    let mut out = GammaProduct {
        rat: gp.rat,
        powers: gp.powers,
        gammas: Vec::new(),
        prods: gp.prods,
    };
    // group by (non-constant part, fractional offset)
    let mut classes: Vec<(Expr, Rat, Vec<(Rat, i64)>)> = Vec::new();
    for (arg, mult) in gp.gammas {
        let (rest, c) = split_const(&arg);
        let frac = frac_part(&c);
        match classes
            .iter_mut()
            .find(|(r, f, _)| *r == rest && *f == frac)
        {
            Some((_, _, entries)) => entries.push((c, mult)),
            None => classes.push((rest, frac, vec![(c, mult)])),
        }
    }
    for (rest, _frac, entries) in classes {
        let mergeable = expr_to_ratfun(&rest).is_some();
        if entries.len() == 1 || !mergeable {
            for (c, m) in entries {
                out.push_gamma(rebuild_arg(&rest, &c), m);
            }
            continue;
        }
        let base_c = entries
            .iter()
            .map(|(c, _)| c.clone())
            .min()
            .expect("nonempty class");
        let rest_rf = expr_to_ratfun(&rest).expect("checked");
        let mut net = 0i64;
        let mut unmerged: Vec<(Rat, i64)> = Vec::new();
        for (c, m) in entries {
            let delta_i = (&c - &base_c).to_integer().to_i64().unwrap_or(i64::MAX);
            // gamma(rest + c) = gamma(rest + base_c) * prod_{t=0}^{delta-1}(rest + base_c + t)
            let mut chain = Vec::new();
            let mut ok = delta_i <= MERGE_SHIFT_LIMIT;
            for t in 0..delta_i {
                if !ok {
                    break;
                }
                let shift = &base_c + Rat::from_integer(num::BigInt::from(t));
                let factor = rest_rf.add(&RationalFunction::from_rat(shift));
                if factor.is_zero() {
                    // a pole of gamma sits between the two arguments; keep
                    // this entry formal
                    ok = false;
                } else {
                    chain.push(factor);
                }
            }
            if !ok {
                unmerged.push((c, m));
                continue;
            }
            for factor in chain {
                out.rat.mul_poly(factor.num(), m);
                out.rat.mul_poly(factor.den(), -m);
            }
            net += m;
        }
        if net != 0 {
            out.push_gamma(rebuild_arg(&rest, &base_c), net);
        }
        for (c, m) in unmerged {
            out.push_gamma(rebuild_arg(&rest, &c), m);
        }
    }
    Ok(out)
}

fn rebuild_arg(rest: &Expr, c: &Rat) -> Expr {
    Expr::add2(rest.clone(), Expr::from_rat(c.clone()))
}

fn merge_powers(gp: GammaProduct) -> Result<GammaProduct> {
    let mut out = GammaProduct {
        rat: gp.rat,
        powers: Vec::new(),
        gammas: gp.gammas,
        prods: gp.prods,
    };
    for (base, exp) in gp.powers {
        if let Some(c) = exp.as_i64() {
            if let Some(rf) = expr_to_ratfun(&base) {
                if !rf.is_zero() {
                    let powed = rf.pow_i64(c)?;
                    out.rat.mul_poly(powed.num(), 1);
                    out.rat.mul_poly(powed.den(), -1);
                    continue;
                }
            }
            // non-rational base with integer exponent: re-decompose
            let gpb = decompose(&base)?.pow(c)?;
            out.mul(gpb);
            continue;
        }
        out.push_power(base, exp);
    }
    Ok(out)
}

fn merge_prods(gp: GammaProduct) -> Result<GammaProduct> {
    let mut out = GammaProduct {
        rat: gp.rat,
        powers: gp.powers,
        gammas: gp.gammas,
        prods: Vec::new(),
    };
    // group by alpha-normalized body and lower bound
    let mut groups: Vec<(Expr, Expr, Vec<(Expr, String, Expr, i64)>)> = Vec::new();
    for (body, idx, lo, hi, m) in gp.prods {
        let norm_body = alpha_normalize(&body, &idx);
        match groups
            .iter_mut()
            .find(|(b, l, _)| *b == norm_body && *l == lo)
        {
            Some((_, _, entries)) => entries.push((body, idx, hi, m)),
            None => groups.push((norm_body, lo, vec![(body, idx, hi, m)])),
        }
    }
    for (_, lo, mut entries) in groups {
        // try to fold entries pairwise when upper bounds differ by an integer
        'retry: loop {
            for i in 0..entries.len() {
                for j in 0..entries.len() {
                    if i == j {
                        continue;
                    }
                    let diff = Expr::sub2(entries[i].2.clone(), entries[j].2.clone());
                    let d = match diff.as_i64() {
                        Some(d) if d >= 0 && d <= MERGE_SHIFT_LIMIT => d,
                        _ => continue,
                    };
                    // prod(.., hi_i) = prod(.., hi_j) * prod body(hi_j + t), t = 1..d
                    let (body_i, idx_i, _, m_i) = entries[i].clone();
                    let hi_j = entries[j].2.clone();
                    let mut extra = GammaProduct::one();
                    for t in 1..=d {
                        let point = Expr::add2(hi_j.clone(), Expr::int(t));
                        let sub = Substitution::new(&idx_i, point).expect("index");
                        let value = body_i.substitute(&sub);
                        extra.mul(decompose(&value)?.pow(m_i)?);
                    }
                    entries[j].3 += m_i;
                    entries.remove(i);
                    out.mul(extra);
                    // remove zero-multiplicity leftovers
                    entries.retain(|(_, _, _, m)| *m != 0);
                    continue 'retry;
                }
            }
            break;
        }
        for (body, idx, hi, m) in entries {
            out.push_prod(body, idx, lo.clone(), hi, m);
        }
    }
    Ok(out)
}

fn alpha_normalize(body: &Expr, idx: &str) -> Expr {
    if idx == "~i" {
        return body.clone();
    }
    let sub = Substitution::new(idx, Expr::sym("~i")).expect("internal index");
    body.substitute(&sub)
}

/// Rebuild a canonical expression from the normal form.
pub(crate) fn emit(gp: &GammaProduct) -> Expr {
    emit_with(gp, false)
}

/// Rebuild a factored display tree (for printing).
pub(crate) fn emit_pretty(gp: &GammaProduct) -> Expr {
    emit_with(gp, true)
}

fn emit_with(gp: &GammaProduct, pretty: bool) -> Expr {
    if gp.is_zero() {
        return Expr::zero();
    }
    let mut gp = gp.clone();
    absorb_prod_boundaries(&mut gp);
    let mut factors: Vec<Expr> = Vec::new();
    let coeff = gp.rat.coeff().clone();
    if !coeff.is_one() {
        factors.push(Expr::from_rat(coeff));
    }
    for (p, e) in gp.rat.factors() {
        let base = crate::expr::poly_to_expr(p);
        push_power_expr(&mut factors, base, *e, pretty);
    }
    for (b, ex) in &gp.powers {
        let pe = if pretty {
            Expr::Pow(Box::new(b.clone()), Box::new(ex.clone()))
        } else {
            Expr::pow(b.clone(), ex.clone())
        };
        factors.push(pe);
    }
    for (a, m) in &gp.gammas {
        let g = if pretty {
            Expr::Gamma(Box::new(a.clone()))
        } else {
            Expr::gamma(a.clone())
        };
        push_power_expr(&mut factors, g, *m, pretty);
    }
    for (body, idx, lo, hi, m) in &gp.prods {
        let p = if pretty {
            Expr::Prod(
                Box::new(body.clone()),
                idx.clone(),
                Box::new(lo.clone()),
                Box::new(hi.clone()),
            )
        } else {
            Expr::prod(body.clone(), idx, lo.clone(), hi.clone())
        };
        push_power_expr(&mut factors, p, *m, pretty);
    }
    if factors.is_empty() {
        return Expr::one();
    }
    if pretty {
        if factors.len() == 1 {
            factors.into_iter().next().unwrap()
        } else {
            Expr::Mul(factors)
        }
    } else {
        Expr::mul(factors)
    }
}

fn push_power_expr(factors: &mut Vec<Expr>, base: Expr, e: i64, pretty: bool) {
    if e == 0 {
        return;
    }
    if e == 1 {
        factors.push(base);
        return;
    }
    let p = if pretty {
        Expr::Pow(Box::new(base), Box::new(Expr::int(e)))
    } else {
        Expr::pow(base, Expr::int(e))
    };
    factors.push(p);
}

/// Fold boundary factors into adjacent products: body(hi+1) present in the
/// rational part extends prod(..., hi) to prod(..., hi+1).
fn absorb_prod_boundaries(gp: &mut GammaProduct) {
    for idx in 0..gp.prods.len() {
        loop {
            let (body, index, _lo, hi, m) = gp.prods[idx].clone();
            if m == 0 {
                break;
            }
            let next = Expr::add2(hi.clone(), Expr::int(1));
            let sub = match Substitution::new(&index, next.clone()) {
                Ok(s) => s,
                Err(_) => break,
            };
            let value = body.substitute(&sub);
            let rf = match expr_to_ratfun(&value) {
                Some(rf) => rf,
                None => break,
            };
            if rf.is_zero() || !rf.den().is_one() {
                break;
            }
            let poly = rf.num().clone();
            let (c, prim) = poly.primitive_signed();
            // the boundary factor must be present with the right sign
            let has = gp
                .rat
                .factors()
                .iter()
                .any(|(p, e)| *p == prim && (*e > 0) == (m > 0) && e.abs() >= m.abs());
            if !has {
                break;
            }
            gp.rat.mul_poly(&prim, -m);
            let mut cpow = Rat::one();
            for _ in 0..m.abs() {
                cpow *= &c;
            }
            if m > 0 {
                gp.rat.mul_rat(&cpow.recip());
            } else {
                gp.rat.mul_rat(&cpow);
            }
            gp.prods[idx].3 = next;
        }
    }
    gp.prods.retain(|(_, _, _, _, m)| *m != 0);
}

// ---- public operations ----

/// Convert to the gamma-product normal form. When `var` is given, every
/// gamma argument and power exponent must be integer-linear in it.
pub fn to_gamma_product(e: &Expr, var: Option<&str>) -> Result<GammaProduct> {
    let gp = decompose(e)?;
    if let Some(v) = var {
        for (arg, _) in &gp.gammas {
            check_integer_linear(arg, v)?;
        }
        for (base, exp) in &gp.powers {
            if base.contains_symbol(v) {
                return Err(Error::NotGammaRepresentable(format!(
                    "power base contains the running variable {}",
                    v
                )));
            }
            check_integer_linear(exp, v)?;
        }
    }
    Ok(gp)
}

/// arg must satisfy arg(var+1) - arg(var) = integer constant.
fn check_integer_linear(arg: &Expr, var: &str) -> Result<()> {
    if !arg.contains_symbol(var) {
        return Ok(());
    }
    let shifted = arg.shift_symbol(var, 1);
    let diff = Expr::sub2(shifted, arg.clone());
    match diff.as_integer() {
        Some(_) => Ok(()),
        None => Err(Error::NotGammaRepresentable(format!(
            "argument {} is not integer-linear in {}",
            crate::expr::print(arg),
            var
        ))),
    }
}

/// Merge gamma pairs with integer argument difference via gamma(a+1) =
/// a*gamma(a); a fully cancelling input comes back as a rational function.
/// Inputs it cannot normalize (e.g. sums of dissimilar terms) are returned
/// with each addend simplified independently.
pub fn simplify_gamma(e: &Expr) -> Expr {
    simplify_core(e)
}

/// Convert factorials, binomials and Pochhammer symbols to gamma terms,
/// then simplify; the output is rational whenever the input is a rational
/// hypergeometric product.
pub fn simplify_combinatorial(e: &Expr) -> Result<Expr> {
    match decompose(e) {
        Ok(gp) => Ok(emit(&merged(gp)?)),
        Err(Error::NotGammaRepresentable(_)) => {
            // simplify addend-wise
            if let Expr::Add(ops) = e {
                let parts: Result<Vec<Expr>> =
                    ops.iter().map(simplify_combinatorial).collect();
                return Ok(Expr::add(parts?));
            }
            Err(Error::NotGammaRepresentable(format!(
                "cannot normalize {}",
                crate::expr::print(e)
            )))
        }
        Err(other) => Err(other),
    }
}

fn simplify_core(e: &Expr) -> Expr {
    match decompose(e).and_then(merged) {
        Ok(gp) => emit(&gp),
        Err(_) => match e {
            Expr::Add(ops) => Expr::add(ops.iter().map(simplify_core).collect()),
            _ => e.clone(),
        },
    }
}

/// Factored display form of `simplify_combinatorial`.
pub fn simplify_combinatorial_pretty(e: &Expr) -> Result<Expr> {
    let gp = merged(decompose(e)?)?;
    Ok(emit_pretty(&gp))
}

/// Rewrite every gamma(x) node as factorial(x - 1).
pub fn gamma_to_factorial(e: &Expr) -> Expr {
    match e {
        Expr::Gamma(a) => {
            let inner = gamma_to_factorial(a);
            Expr::factorial(Expr::add2(inner, Expr::int(-1)))
        }
        Expr::Integer(_) | Expr::Rational(_) | Expr::Symbol(_) | Expr::SumRef(_) => e.clone(),
        Expr::Add(ops) => Expr::add(ops.iter().map(gamma_to_factorial).collect()),
        Expr::Mul(ops) => Expr::mul(ops.iter().map(gamma_to_factorial).collect()),
        Expr::Pow(b, x) => Expr::pow(gamma_to_factorial(b), gamma_to_factorial(x)),
        Expr::Factorial(a) => Expr::factorial(gamma_to_factorial(a)),
        Expr::Binomial(t, b) => Expr::binomial(gamma_to_factorial(t), gamma_to_factorial(b)),
        Expr::Pochhammer(a, c) => {
            Expr::pochhammer(gamma_to_factorial(a), gamma_to_factorial(c))
        }
        Expr::Prod(body, idx, lo, hi) => Expr::prod(
            gamma_to_factorial(body),
            idx,
            gamma_to_factorial(lo),
            gamma_to_factorial(hi),
        ),
    }
}

/// Decide value equality by normalizing the difference to zero with the
/// gamma-product machinery. `false` also covers "could not decide".
pub fn values_equal(a: &Expr, b: &Expr) -> bool {
    let diff = Expr::sub2(a.clone(), b.clone());
    if diff.canonical().is_zero_lit() {
        return true;
    }
    match decompose(&diff).and_then(merged) {
        Ok(gp) => gp.is_zero(),
        Err(_) => false,
    }
}

/// Exact term ratio: a(k)/a(k-1) for `Down`, a(k+1)/a(k) for `Up`.
pub fn term_ratio(e: &Expr, var: &str, direction: Direction) -> Result<TermRatio> {
    let gp = to_gamma_product(e, Some(var))?;
    let delta = match direction {
        Direction::Down => -1,
        Direction::Up => 1,
    };
    let shifted = gp.substitute(
        &Substitution::new(var, Expr::add2(Expr::sym(var), Expr::int(delta)))
            .expect("shift"),
    )?;
    let ratio_gp = match direction {
        Direction::Down => gp.div(&shifted)?,
        Direction::Up => shifted.div(&gp)?,
    };
    let ratio_gp = merged(ratio_gp)?;
    if !ratio_gp.is_rational() {
        return Err(Error::NotGammaRepresentable(format!(
            "a({v})/a({v}-1) is not a rational function of {v}",
            v = var
        )));
    }
    if ratio_gp.is_zero() {
        return Err(Error::NotGammaRepresentable(
            "term is identically zero".into(),
        ));
    }
    let mut flist = ratio_gp.rat;
    flist.reduce();
    let ratio = flist.to_ratfun();
    Ok(TermRatio {
        var: var.to_string(),
        direction,
        ratio,
        flist,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, print};

    fn tr(text: &str, var: &str) -> RationalFunction {
        term_ratio(&parse(text).unwrap(), var, Direction::Down)
            .unwrap()
            .ratio
    }

    fn rf(text: &str) -> RationalFunction {
        expr_to_ratfun(&parse(text).unwrap()).unwrap()
    }

    #[test]
    fn gamma_ratio_merges() {
        // gamma(k+2)/gamma(k) = k^2 + k
        let e = parse("gamma(k+2)/gamma(k)").unwrap();
        let s = simplify_combinatorial(&e).unwrap();
        assert_eq!(s, parse("k^2 + k").unwrap());
    }

    #[test]
    fn binomial_stays_in_gamma_form() {
        let e = parse("binomial(n,k)").unwrap();
        let s = simplify_combinatorial(&e).unwrap();
        let expect = parse("gamma(n + 1)/(gamma(k + 1)*gamma(n + 1 - k))").unwrap();
        assert_eq!(s.canonical(), expect.canonical());
    }

    #[test]
    fn gamma_to_factorial_rewrites() {
        let e = parse("gamma(n + 1)/(gamma(k + 1)*gamma(n + 1 - k))").unwrap();
        let f = gamma_to_factorial(&e);
        let expect = parse("factorial(n)/(factorial(k)*factorial(n - k))").unwrap();
        assert_eq!(f, expect);
    }

    #[test]
    fn pochhammer_ratio() {
        // pochhammer(a,k)/pochhammer(a,k-1) = a + k - 1
        let r = tr("pochhammer(a,k)", "k");
        assert_eq!(r, rf("a + k - 1"));
    }

    #[test]
    fn paper_ratio_pochhammer_shift() {
        // a(k) = pochhammer(k-n, n): a(k)/a(k-1) = (k-1)/(k-n-1)
        let r = tr("pochhammer(k-n,n)", "k");
        assert_eq!(r, rf("(k-1)/(k-n-1)"));
    }

    #[test]
    fn binomial_square_ratio_in_n() {
        // F(n,k) = binomial(n,k)^2: F/F(n-1) = n^2/(k-n)^2
        let r = tr("binomial(n,k)^2", "n");
        assert_eq!(r, rf("n^2/(k^2 - 2*k*n + n^2)"));
    }

    #[test]
    fn one_over_k_ratio() {
        let r = tr("1/k", "k");
        assert_eq!(r, rf("(k-1)/k"));
    }

    #[test]
    fn power_factor_ratio() {
        // ((-1)^k 4^-k) ratio: -1/4
        let r = tr("(-1)^k/4^k", "k");
        assert_eq!(r, rf("-1/4"));
    }

    #[test]
    fn factorial_half_not_applicable() {
        let e = parse("factorial(k/2)").unwrap();
        assert!(matches!(
            term_ratio(&e, "k", Direction::Down),
            Err(Error::NotGammaRepresentable(_))
        ));
        assert!(matches!(
            to_gamma_product(&e, Some("k")),
            Err(Error::NotGammaRepresentable(_))
        ));
        // without a running variable the conversion is fine
        assert!(to_gamma_product(&e, None).is_ok());
    }

    #[test]
    fn factorial_pow_k_not_hypergeometric() {
        let e = parse("factorial(k)^k").unwrap();
        assert!(term_ratio(&e, "k", Direction::Down).is_err());
    }

    #[test]
    fn factorial_ratio_not_rational() {
        let e = parse("factorial(k)").unwrap();
        // the ratio IS rational (k); factorial(k) is hypergeometric
        let r = term_ratio(&e, "k", Direction::Down).unwrap();
        assert_eq!(r.ratio, rf("k"));
    }

    #[test]
    fn sum_of_similar_terms_combines() {
        // k!*(k+2) = k!*k + 2*k!: decompose the sum form
        let e = parse("factorial(k)*k + 2*factorial(k)").unwrap();
        let s = simplify_combinatorial(&e).unwrap();
        let direct = simplify_combinatorial(&parse("factorial(k)*(k+2)").unwrap()).unwrap();
        assert_eq!(s, direct);
    }

    #[test]
    fn prod_ratio_substitutes_body() {
        // prod(f(j), j, 1, k) / prod(f(j), j, 1, k-1) = f(k)
        let e = parse("prod(a + b*j + c*j^2, j, 1, k)").unwrap();
        let r = term_ratio(&e, "k", Direction::Down).unwrap();
        assert_eq!(r.ratio, rf("a + b*k + c*k^2"));
    }

    #[test]
    fn up_ratio_is_shifted_down_ratio() {
        let e = parse("binomial(n,k)").unwrap();
        let down = term_ratio(&e, "k", Direction::Down).unwrap().ratio;
        let up = term_ratio(&e, "k", Direction::Up).unwrap().ratio;
        let down_shifted = down.shift_int("k", 1);
        assert_eq!(up, down_shifted);
    }

    #[test]
    fn krawtchouk_shift_ratio() {
        // simplify_combinatorial(sub(k=k+1, T)/T) for the krawtchouk term
        let term = "(-1)^n*p^n*binomial(nn,n)*pochhammer(-n,k)*pochhammer(-x,k)/(pochhammer(-nn,k)*factorial(k))*(1/p)^k";
        let e = parse(&format!("sub(k=k+1,{t})/({t})", t = term)).unwrap();
        let s = simplify_combinatorial(&e).unwrap();
        let expect = parse("(k - n)*(k - x)/((k - nn)*(k + 1)*p)").unwrap();
        assert!(values_equal(&s, &expect));
    }

    #[test]
    fn simplify_gamma_leaves_dissimilar_sum() {
        let e = parse("gamma(k) + gamma(j)").unwrap();
        assert_eq!(simplify_gamma(&e), e);
    }

    #[test]
    fn prompt10_ratio() {
        // gosper input prod(f,j,1,k-1)/prod(g,j,1,k) ratio
        let e = parse(
            "prod(a + b*j + c*j^2, j, 1, k-1)/prod(e + b*j + c*j^2, j, 1, k)",
        )
        .unwrap();
        let r = term_ratio(&e, "k", Direction::Down).unwrap();
        let expect = rf("(a + b*(k-1) + c*(k-1)^2)/(e + b*k + c*k^2)");
        assert_eq!(r.ratio, expect);
    }

    #[test]
    fn gamma_cancellation_to_poly() {
        // gamma(k+n)/gamma(k+n-3) = (k+n-1)(k+n-2)(k+n-3)
        let e = parse("gamma(k+n)/gamma(k+n-3)").unwrap();
        let s = simplify_combinatorial(&e).unwrap();
        let expect = parse("(k+n-1)*(k+n-2)*(k+n-3)").unwrap();
        assert_eq!(s, expect);
        // numeric spot check at k=2, n=5: gamma(7)/gamma(4) = 720/6 = 120
        let _ = print(&s);
    }
}
