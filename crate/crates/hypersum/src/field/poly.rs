//! Sparse multivariate polynomials over arbitrary-precision rationals.
//!
//! Monomials are ordered graded-lexicographically with a fixed global symbol
//! order (alphabetical), so leading terms, canonical forms and printing are
//! deterministic. The gcd and resultant machinery is the classical
//! subresultant PRS, reduced to the univariate case by recursive
//! content/primitive-part extraction.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;
pub type Int = BigInt;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Returns Some(z) when r is an integer.
pub fn rat_as_int(r: &Rat) -> Option<Int> {
    if r.denom().is_one() {
        Some(r.numer().clone())
    } else {
        None
    }
}

pub fn rat_as_i64(r: &Rat) -> Option<i64> {
    rat_as_int(r).and_then(|z| i64::try_from(&z).ok())
}

/// Exponent vector aligned to a polynomial's variable list.
///
/// Graded-lex order: higher total degree is larger; ties are broken
/// lexicographically with the first (alphabetically smallest) variable
/// most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    fn total(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    /// Sorted, deduplicated; every variable has a nonzero exponent in some term.
    vars: Vec<String>,
    /// Monomial -> nonzero coefficient, exponents aligned to `vars`.
    terms: BTreeMap<Monomial, Rat>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial {
            vars: Vec::new(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(Vec::new()), c);
        }
        Polynomial {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rat_int(n))
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(vec![1]), Rat::one());
        Polynomial {
            vars: vec![name.to_string()],
            terms,
        }
    }

    /// c * v^e
    pub fn monomial(name: &str, e: u32, c: Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if e == 0 {
            return Self::constant(c);
        }
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(vec![e]), c);
        Polynomial {
            vars: vec![name.to_string()],
            terms,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    /// Some(c) when the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rat> {
        if self.vars.is_empty() || self.terms.keys().all(|m| m.total() == 0) {
            Some(
                self.terms
                    .values()
                    .next()
                    .cloned()
                    .unwrap_or_else(Rat::zero),
            )
        } else {
            None
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn contains_var(&self, name: &str) -> bool {
        self.vars.iter().any(|v| v == name)
    }

    pub fn total_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|m| m.total() as i64)
            .max()
            .unwrap_or(-1)
    }

    /// Degree in one variable; -1 for the zero polynomial.
    pub fn degree_in(&self, var: &str) -> i64 {
        match self.vars.iter().position(|v| v == var) {
            None => {
                if self.is_zero() {
                    -1
                } else {
                    0
                }
            }
            Some(i) => self
                .terms
                .keys()
                .map(|m| m.0[i] as i64)
                .max()
                .unwrap_or(-1),
        }
    }

    /// Drop zero coefficients and unused variable columns.
    fn normalize(mut self) -> Self {
        self.terms.retain(|_, c| !c.is_zero());
        if self.terms.is_empty() {
            return Self::zero();
        }
        let n = self.vars.len();
        let mut used = vec![false; n];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        if used.iter().all(|&u| u) {
            return self;
        }
        let keep: Vec<usize> = (0..n).filter(|&i| used[i]).collect();
        let vars: Vec<String> = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let mut terms = BTreeMap::new();
        for (m, c) in self.terms {
            let exps: Vec<u32> = keep.iter().map(|&i| m.0[i]).collect();
            terms.insert(Monomial(exps), c);
        }
        Polynomial { vars, terms }
    }

    /// Remap both polynomials onto the union of their variable lists.
    fn aligned(&self, other: &Self) -> (Vec<String>, Vec<usize>, Vec<usize>) {
        let mut vars: Vec<String> = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        vars.sort();
        let pos_a: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).unwrap())
            .collect();
        let pos_b: Vec<usize> = other
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).unwrap())
            .collect();
        (vars, pos_a, pos_b)
    }

    fn remap(m: &Monomial, pos: &[usize], width: usize) -> Monomial {
        let mut exps = vec![0u32; width];
        for (i, &e) in m.0.iter().enumerate() {
            exps[pos[i]] = e;
        }
        Monomial(exps)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (vars, pa, pb) = self.aligned(other);
        let w = vars.len();
        let mut terms: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(Self::remap(m, &pa, w), c.clone());
        }
        for (m, c) in &other.terms {
            let key = Self::remap(m, &pb, w);
            match terms.get_mut(&key) {
                Some(acc) => *acc += c,
                None => {
                    terms.insert(key, c.clone());
                }
            }
        }
        Polynomial { vars, terms }.normalize()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), -c.clone()))
            .collect();
        Polynomial {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (vars, pa, pb) = self.aligned(other);
        let w = vars.len();
        let a: Vec<(Monomial, &Rat)> = self
            .terms
            .iter()
            .map(|(m, c)| (Self::remap(m, &pa, w), c))
            .collect();
        let b: Vec<(Monomial, &Rat)> = other
            .terms
            .iter()
            .map(|(m, c)| (Self::remap(m, &pb, w), c))
            .collect();
        let mut terms: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (ma, ca) in &a {
            for (mb, cb) in &b {
                let exps: Vec<u32> = ma
                    .0
                    .iter()
                    .zip(mb.0.iter())
                    .map(|(x, y)| x + y)
                    .collect();
                let key = Monomial(exps);
                let prod = *ca * *cb;
                match terms.get_mut(&key) {
                    Some(acc) => *acc += prod,
                    None => {
                        terms.insert(key, prod);
                    }
                }
            }
        }
        Polynomial { vars, terms }.normalize()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, k)| (m.clone(), k * c))
            .collect();
        Polynomial {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Leading (monomial, coefficient) under the global graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rat {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rat::zero)
    }

    /// Dense coefficient list in `var`, ascending powers; each entry is a
    /// polynomial in the remaining variables.
    pub fn coeffs_in(&self, var: &str) -> Vec<Polynomial> {
        let deg = self.degree_in(var);
        if deg < 0 {
            return Vec::new();
        }
        let mut out = vec![Self::zero(); (deg + 1) as usize];
        match self.vars.iter().position(|v| v == var) {
            None => {
                out[0] = self.clone();
            }
            Some(i) => {
                for (m, c) in &self.terms {
                    let e = m.0[i] as usize;
                    let mut exps = m.0.clone();
                    exps.remove(i);
                    let mut vars = self.vars.clone();
                    vars.remove(i);
                    let part = Polynomial {
                        vars,
                        terms: BTreeMap::from([(Monomial(exps), c.clone())]),
                    }
                    .normalize();
                    out[e] = out[e].add(&part);
                }
            }
        }
        out
    }

    /// Rebuild from a dense coefficient list in `var` (ascending powers).
    pub fn from_coeffs_in(var: &str, coeffs: &[Polynomial]) -> Self {
        let v = Self::var(var);
        let mut acc = Self::zero();
        for c in coeffs.iter().rev() {
            acc = acc.mul(&v).add(c);
        }
        acc
    }

    /// Leading coefficient viewed as a univariate polynomial in `var`.
    pub fn leading_in(&self, var: &str) -> Polynomial {
        let cs = self.coeffs_in(var);
        cs.last().cloned().unwrap_or_else(Self::zero)
    }

    /// Substitute a polynomial for a variable (Horner evaluation).
    pub fn substitute(&self, var: &str, value: &Polynomial) -> Self {
        if !self.contains_var(var) {
            return self.clone();
        }
        let coeffs = self.coeffs_in(var);
        let mut acc = Self::zero();
        for c in coeffs.iter().rev() {
            acc = acc.mul(value).add(c);
        }
        acc
    }

    /// var -> var + offset
    pub fn shift(&self, var: &str, offset: &Rat) -> Self {
        if offset.is_zero() || !self.contains_var(var) {
            return self.clone();
        }
        let repl = Self::var(var).add(&Self::constant(offset.clone()));
        self.substitute(var, &repl)
    }

    pub fn shift_int(&self, var: &str, offset: i64) -> Self {
        self.shift(var, &rat_int(offset))
    }

    pub fn substitute_rat(&self, var: &str, value: &Rat) -> Self {
        self.substitute(var, &Self::constant(value.clone()))
    }

    pub fn derivative(&self, var: &str) -> Self {
        let i = match self.vars.iter().position(|v| v == var) {
            None => return Self::zero(),
            Some(i) => i,
        };
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] = e - 1;
            let coeff = c * rat_int(e as i64);
            let key = Monomial(exps);
            terms.insert(key, coeff);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms,
        }
        .normalize()
    }

    /// Positive rational `r` such that `self / r` has coprime integer
    /// coefficients; zero for the zero polynomial.
    pub fn content_rat(&self) -> Rat {
        if self.is_zero() {
            return Rat::zero();
        }
        let mut num_gcd = Int::zero();
        let mut den_lcm = Int::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        Rat::new(num_gcd, den_lcm)
    }

    /// Integer-primitive form with positive leading coefficient, plus the
    /// (signed) rational factor taken out: `self = factor * primitive`.
    pub fn primitive_signed(&self) -> (Rat, Polynomial) {
        if self.is_zero() {
            return (Rat::zero(), Self::zero());
        }
        let mut f = self.content_rat();
        if self.leading_coeff().is_negative() {
            f = -f;
        }
        let inv = f.recip();
        (f, self.scale(&inv))
    }

    pub fn primitive_part(&self) -> Polynomial {
        self.primitive_signed().1
    }

    /// Exact division; fails when `self` is not a polynomial multiple of `d`.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if let Some(c) = d.as_constant() {
            return Ok(self.scale(&c.recip()));
        }
        let (vars, pa, pb) = self.aligned(d);
        let w = vars.len();
        let mut rem: BTreeMap<Monomial, Rat> = self
            .terms
            .iter()
            .map(|(m, c)| (Self::remap(m, &pa, w), c.clone()))
            .collect();
        let dterms: Vec<(Monomial, Rat)> = d
            .terms
            .iter()
            .map(|(m, c)| (Self::remap(m, &pb, w), c.clone()))
            .collect();
        let (dlead_m, dlead_c) = dterms.last().cloned().unwrap();
        let mut quot: BTreeMap<Monomial, Rat> = BTreeMap::new();
        while let Some((rm, rc)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            // leading term of remainder must be divisible by leading term of d
            let mut qexps = Vec::with_capacity(w);
            for (a, b) in rm.0.iter().zip(dlead_m.0.iter()) {
                if a < b {
                    return Err(Error::NotDivisible);
                }
                qexps.push(a - b);
            }
            let qm = Monomial(qexps);
            let qc = &rc / &dlead_c;
            // rem -= (qc * x^qm) * d
            for (dm, dc) in &dterms {
                let exps: Vec<u32> = qm.0.iter().zip(dm.0.iter()).map(|(x, y)| x + y).collect();
                let key = Monomial(exps);
                let delta = &qc * dc;
                let newc = match rem.get(&key) {
                    Some(old) => old - &delta,
                    None => -delta,
                };
                if newc.is_zero() {
                    rem.remove(&key);
                } else {
                    rem.insert(key, newc);
                }
            }
            quot.insert(qm, qc);
        }
        Ok(Polynomial { vars, terms: quot }.normalize())
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.exact_div(self).is_ok()
    }

    /// Pseudo-remainder of self by d with respect to `var`:
    /// lc(d)^(deg self - deg d + 1) * self = q*d + prem.
    fn prem(&self, d: &Self, var: &str) -> Self {
        let dd = d.degree_in(var);
        assert!(dd >= 0, "prem by zero");
        let mut r = self.clone();
        let mut dr = r.degree_in(var);
        if dr < dd {
            // still scale by lc^(delta+1) with delta clamped at 0 shifts; the
            // subresultant algorithm only calls this with dr >= dd
            return r;
        }
        let lc_d = d.leading_in(var);
        let mut scale_count = dr - dd + 1;
        while dr >= dd && !r.is_zero() {
            let lc_r = r.leading_in(var);
            // r = lc_d * r - lc_r * x^(dr-dd) * d
            let shift = Polynomial::monomial(var, (dr - dd) as u32, Rat::one());
            r = lc_d.mul(&r).sub(&lc_r.mul(&shift).mul(d));
            scale_count -= 1;
            dr = r.degree_in(var);
        }
        // pad the scaling so exactly lc_d^(deg0-dd+1) was applied
        for _ in 0..scale_count {
            r = lc_d.mul(&r);
        }
        r
    }

    /// Content with respect to `var`: gcd of the coefficients (a polynomial
    /// in the remaining variables), primitive with positive leading coeff.
    pub fn content_in(&self, var: &str) -> Polynomial {
        let coeffs = self.coeffs_in(var);
        let mut g = Polynomial::zero();
        for c in &coeffs {
            if c.is_zero() {
                continue;
            }
            g = poly_gcd(&g, c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn primitive_in(&self, var: &str) -> Polynomial {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content_in(var);
        self.exact_div(&c).expect("content divides")
    }

    /// Evaluate with every variable assigned; fails if one is missing.
    pub fn eval(&self, assign: &BTreeMap<String, Rat>) -> Option<Rat> {
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = assign.get(&self.vars[i])?;
                let mut p = Rat::one();
                for _ in 0..e {
                    p *= v;
                }
                t *= p;
            }
            total += t;
        }
        Some(total)
    }

    /// Iterate (exponent map, coefficient) pairs.
    pub fn iter_terms(&self) -> impl Iterator<Item = (Vec<(String, u32)>, &Rat)> {
        self.terms.iter().map(move |(m, c)| {
            let exps: Vec<(String, u32)> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (self.vars[i].clone(), e))
                .collect();
            (exps, c)
        })
    }
}

/// Primitive gcd (positive leading coefficient); gcd(0, b) = primitive(b).
pub fn poly_gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.primitive_part();
    }
    if b.is_zero() {
        return a.primitive_part();
    }
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return Polynomial::one();
    }
    // Pick a main variable occurring in both if possible; a variable in only
    // one operand forces the gcd into the other's content.
    let var = a
        .vars()
        .iter()
        .find(|v| b.contains_var(v))
        .cloned()
        .unwrap_or_else(|| a.vars()[0].clone());
    if !b.contains_var(&var) {
        // gcd divides content of a w.r.t. var
        let ca = a.content_in(&var);
        return poly_gcd(&ca, b);
    }

    let ca = a.content_in(&var);
    let cb = b.content_in(&var);
    let cont = poly_gcd(&ca, &cb);
    let mut p = a.exact_div(&ca).expect("content divides");
    let mut q = b.exact_div(&cb).expect("content divides");
    if p.degree_in(&var) < q.degree_in(&var) {
        std::mem::swap(&mut p, &mut q);
    }

    // Subresultant PRS on the primitive parts.
    let mut g = Polynomial::one();
    let mut h = Polynomial::one();
    loop {
        let dp = p.degree_in(&var);
        let dq = q.degree_in(&var);
        let delta = (dp - dq) as u32;
        let r = p.prem(&q, &var);
        if r.is_zero() {
            let res = q.primitive_in(&var);
            return cont.mul(&res).primitive_part();
        }
        if r.degree_in(&var) == 0 {
            return cont.primitive_part();
        }
        p = q;
        q = {
            let divisor = g.mul(&h.pow(delta));
            r.exact_div(&divisor).expect("subresultant division")
        };
        g = p.leading_in(&var);
        h = if delta == 0 {
            h
        } else {
            // h = g^delta / h^(delta-1)
            g.pow(delta)
                .exact_div(&h.pow(delta - 1))
                .expect("subresultant h update")
        };
    }
}

/// Resultant of a and b with respect to `var` (subresultant PRS).
///
/// Only the vanishing locus matters for the callers in this crate, but the
/// classical normalization is kept so small cases agree with the Sylvester
/// determinant.
pub fn resultant(a: &Polynomial, b: &Polynomial, var: &str) -> Polynomial {
    let da = a.degree_in(var);
    let db = b.degree_in(var);
    if da < 0 || db < 0 {
        return Polynomial::zero();
    }
    if da == 0 {
        return a.pow(db as u32);
    }
    if db == 0 {
        return b.pow(da as u32);
    }
    if da < db {
        let r = resultant(b, a, var);
        // res(a,b) = (-1)^(da*db) res(b,a)
        return if (da * db) % 2 == 1 { r.neg() } else { r };
    }
    let mut p = a.clone();
    let mut q = b.clone();
    let mut g = Polynomial::one();
    let mut h = Polynomial::one();
    let mut sign_flip = false;
    loop {
        let dp = p.degree_in(var);
        let dq = q.degree_in(var);
        let delta = (dp - dq) as u32;
        if (dp % 2 == 1) && (dq % 2 == 1) {
            sign_flip = !sign_flip;
        }
        let r = p.prem(&q, var);
        if r.is_zero() {
            return Polynomial::zero();
        }
        let dr = r.degree_in(var);
        p = q;
        q = {
            let divisor = g.mul(&h.pow(delta));
            r.exact_div(&divisor).expect("subresultant division")
        };
        g = p.leading_in(var);
        h = if delta == 0 {
            h
        } else {
            g.pow(delta)
                .exact_div(&h.pow(delta - 1))
                .expect("subresultant h update")
        };
        if dr == 0 {
            // q is now a constant in var: finish with h^(1-s) * q^s, s = deg p
            let s = p.degree_in(var) as u32;
            let num = q.pow(s);
            let res = if s == 0 {
                // deg p == 0 cannot happen: p had degree >= 1
                num
            } else {
                num.exact_div(&h.pow(s - 1)).expect("resultant finish")
            };
            return if sign_flip { res.neg() } else { res };
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mut piece = String::new();
            let mut lead = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !piece.is_empty() {
                    piece.push('*');
                }
                piece.push_str(&self.vars[i]);
                if e > 1 {
                    piece.push_str(&format!("^{}", e));
                }
            }
            let neg = lead.is_negative();
            if neg {
                lead = -lead;
            }
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if piece.is_empty() {
                write!(f, "{}", lead)?;
            } else if lead.is_one() {
                write!(f, "{}", piece)?;
            } else {
                write!(f, "{}*{}", lead, piece)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(name: &str) -> Polynomial {
        Polynomial::var(name)
    }

    #[test]
    fn arithmetic_basics() {
        let k = p("k");
        // (k-1)(k+1) = k^2 - 1
        let a = k.sub(&Polynomial::one());
        let b = k.add(&Polynomial::one());
        let prod = a.mul(&b);
        let expect = k.pow(2).sub(&Polynomial::one());
        assert_eq!(prod, expect);
    }

    #[test]
    fn exact_division() {
        let k = p("k");
        let a = k.pow(2).sub(&Polynomial::one());
        let b = k.sub(&Polynomial::one());
        let q = a.exact_div(&b).unwrap();
        assert_eq!(q, k.add(&Polynomial::one()));
        assert!(k.pow(2).exact_div(&b).is_err());
    }

    #[test]
    fn content_examples() {
        // content(6k^2 + 4k) = 2
        let k = p("k");
        let poly = k.pow(2).scale(&rat_int(6)).add(&k.scale(&rat_int(4)));
        assert_eq!(poly.content_rat(), rat_int(2));
    }

    #[test]
    fn gcd_examples() {
        let k = p("k");
        let n = p("n");
        // gcd(k^2-1, k^2-2k+1) = k-1
        let a = k.pow(2).sub(&Polynomial::one());
        let b = k.sub(&Polynomial::one()).pow(2);
        assert_eq!(poly_gcd(&a, &b), k.sub(&Polynomial::one()));
        // gcd(k-n, k+n) = 1
        assert_eq!(poly_gcd(&k.sub(&n), &k.add(&n)), Polynomial::one());
        // gcd(0, 3k) = k
        let zk = Polynomial::zero();
        assert_eq!(poly_gcd(&zk, &k.scale(&rat_int(3))), k);
    }

    #[test]
    fn multivariate_gcd_with_common_factor() {
        let k = p("k");
        let n = p("n");
        let g = k.add(&n).add(&Polynomial::one()); // k+n+1
        let a = g.mul(&k.sub(&Polynomial::one()));
        let b = g.mul(&n.add(&Polynomial::from_int(2)));
        assert_eq!(poly_gcd(&a, &b), g);
    }

    #[test]
    fn shift_and_substitute() {
        let k = p("k");
        let q = k.pow(2).add(&k); // k^2 + k
        let shifted = q.shift_int("k", -1); // (k-1)^2 + (k-1) = k^2 - k
        assert_eq!(shifted, k.pow(2).sub(&k));
    }

    #[test]
    fn resultant_univariate_known_value() {
        // res_x(x^2 - 1, x - 2) = (2-1)(2+1) = 3
        let x = p("x");
        let a = x.pow(2).sub(&Polynomial::one());
        let b = x.sub(&Polynomial::from_int(2));
        let r = resultant(&a, &b, "x");
        assert_eq!(r.as_constant().unwrap(), rat_int(3));
    }

    #[test]
    fn resultant_vanishes_on_common_root() {
        let x = p("x");
        let a = x.sub(&Polynomial::from_int(3)).mul(&x.add(&Polynomial::one()));
        let b = x.sub(&Polynomial::from_int(3)).mul(&x.add(&Polynomial::from_int(5)));
        assert!(resultant(&a, &b, "x").is_zero());
    }

    #[test]
    fn resultant_symbolic_shift() {
        // res_k(k, k - n + j) = j - n up to sign
        let k = p("k");
        let n = p("n");
        let j = p("j");
        let b = k.sub(&n).add(&j);
        let r = resultant(&k, &b, "k");
        let expect = j.sub(&n);
        assert!(r == expect || r == expect.neg());
    }

    #[test]
    fn coeffs_roundtrip() {
        let k = p("k");
        let n = p("n");
        let poly = k.pow(2).mul(&n).add(&k.scale(&rat_int(3))).sub(&n.pow(2));
        let cs = poly.coeffs_in("k");
        assert_eq!(cs.len(), 3);
        let back = Polynomial::from_coeffs_in("k", &cs);
        assert_eq!(back, poly);
    }
}
