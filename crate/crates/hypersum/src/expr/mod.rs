//! Immutable symbolic expression trees with canonical arithmetic
//! normalization.
//!
//! Canonical form: Add/Mul operand lists are flattened and sorted under a
//! fixed total order, like terms and like bases are collected, numeric
//! literals are folded, products distribute over sums, and integer powers of
//! sums are expanded. Factorial/gamma/binomial/pochhammer/prod nodes with
//! literal integer arguments reduce to explicit products.

mod convert;
mod parse;
mod print;

pub use convert::{expr_to_ratfun, factored_to_expr, poly_to_expr, ratfun_to_expr};
pub use parse::parse;
pub use print::print;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num::{BigInt, BigRational, One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{Rat, RationalFunction};

/// Expression tree node. Values are immutable after construction; all
/// operations are pure functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Integer(BigInt),
    /// Reduced, non-integer, positive denominator.
    Rational(BigRational),
    Symbol(String),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Factorial(Box<Expr>),
    Gamma(Box<Expr>),
    Binomial(Box<Expr>, Box<Expr>),
    Pochhammer(Box<Expr>, Box<Expr>),
    /// prod(body, index, lower, upper); the index does not occur free in the
    /// bounds.
    Prod(Box<Expr>, String, Box<Expr>, Box<Expr>),
    /// The symbolic `sum(n + shift)` token used in recurrence output.
    SumRef(i64),
}

/// Replace one symbol by an expression (capture-free, then renormalize).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    target: String,
    replacement: Expr,
}

impl Substitution {
    pub fn new(target: &str, replacement: Expr) -> Result<Self> {
        if replacement.contains_sumref() {
            return Err(Error::InvalidInput(
                "substitution replacement may not contain sum(...)".into(),
            ));
        }
        Ok(Substitution {
            target: target.to_string(),
            replacement,
        })
    }

    pub fn target(&self) -> &str {
        &self.target
    }

    pub fn replacement(&self) -> &Expr {
        &self.replacement
    }
}

const FOLD_POW_LIMIT: i64 = 4096;
const EXPAND_SUM_POW_LIMIT: i64 = 64;
const EXPAND_FUNC_LIMIT: i64 = 400;

impl Expr {
    pub fn int(n: i64) -> Expr {
        Expr::Integer(BigInt::from(n))
    }

    pub fn from_big(n: BigInt) -> Expr {
        Expr::Integer(n)
    }

    pub fn from_rat(r: Rat) -> Expr {
        if r.denom().is_one() {
            Expr::Integer(r.numer().clone())
        } else {
            Expr::Rational(r)
        }
    }

    pub fn sym(name: &str) -> Expr {
        Expr::Symbol(name.to_string())
    }

    pub fn add(ops: Vec<Expr>) -> Expr {
        norm_add(ops)
    }

    pub fn add2(a: Expr, b: Expr) -> Expr {
        norm_add(vec![a, b])
    }

    pub fn sub2(a: Expr, b: Expr) -> Expr {
        norm_add(vec![a, Expr::neg(b)])
    }

    pub fn mul(ops: Vec<Expr>) -> Expr {
        norm_mul(ops)
    }

    pub fn mul2(a: Expr, b: Expr) -> Expr {
        norm_mul(vec![a, b])
    }

    pub fn div2(a: Expr, b: Expr) -> Expr {
        norm_mul(vec![a, norm_pow(b, Expr::int(-1))])
    }

    pub fn neg(a: Expr) -> Expr {
        norm_mul(vec![Expr::int(-1), a])
    }

    pub fn pow(base: Expr, exp: Expr) -> Expr {
        norm_pow(base, exp)
    }

    pub fn factorial(a: Expr) -> Expr {
        norm_factorial(a)
    }

    pub fn gamma(a: Expr) -> Expr {
        norm_gamma(a)
    }

    pub fn binomial(top: Expr, bottom: Expr) -> Expr {
        norm_binomial(top, bottom)
    }

    pub fn pochhammer(base: Expr, count: Expr) -> Expr {
        norm_pochhammer(base, count)
    }

    pub fn prod(body: Expr, index: &str, lower: Expr, upper: Expr) -> Expr {
        norm_prod(body, index.to_string(), lower, upper)
    }

    pub fn sumref(shift: i64) -> Expr {
        Expr::SumRef(shift)
    }

    pub fn zero() -> Expr {
        Expr::int(0)
    }

    pub fn one() -> Expr {
        Expr::int(1)
    }

    pub fn is_zero_lit(&self) -> bool {
        matches!(self, Expr::Integer(n) if n.is_zero())
    }

    pub fn is_one_lit(&self) -> bool {
        matches!(self, Expr::Integer(n) if n.is_one())
    }

    pub fn as_integer(&self) -> Option<&BigInt> {
        match self {
            Expr::Integer(n) => Some(n),
            _ => None,
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_integer().and_then(|n| n.to_i64())
    }

    pub fn as_rat(&self) -> Option<Rat> {
        match self {
            Expr::Integer(n) => Some(Rat::from_integer(n.clone())),
            Expr::Rational(r) => Some(r.clone()),
            _ => None,
        }
    }

    /// Fully renormalize an arbitrary tree (smart constructors assume
    /// canonical children; this does not).
    pub fn canonical(&self) -> Expr {
        match self {
            Expr::Integer(_) | Expr::Symbol(_) | Expr::SumRef(_) => self.clone(),
            Expr::Rational(r) => Expr::from_rat(r.clone()),
            Expr::Add(ops) => norm_add(ops.iter().map(|o| o.canonical()).collect()),
            Expr::Mul(ops) => norm_mul(ops.iter().map(|o| o.canonical()).collect()),
            Expr::Pow(b, e) => norm_pow(b.canonical(), e.canonical()),
            Expr::Factorial(a) => norm_factorial(a.canonical()),
            Expr::Gamma(a) => norm_gamma(a.canonical()),
            Expr::Binomial(t, b) => norm_binomial(t.canonical(), b.canonical()),
            Expr::Pochhammer(a, c) => norm_pochhammer(a.canonical(), c.canonical()),
            Expr::Prod(body, idx, lo, hi) => norm_prod(
                body.canonical(),
                idx.clone(),
                lo.canonical(),
                hi.canonical(),
            ),
        }
    }

    pub fn substitute(&self, s: &Substitution) -> Expr {
        match self {
            Expr::Symbol(name) if name == &s.target => s.replacement.clone(),
            Expr::Integer(_) | Expr::Rational(_) | Expr::Symbol(_) | Expr::SumRef(_) => {
                self.clone()
            }
            Expr::Add(ops) => norm_add(ops.iter().map(|o| o.substitute(s)).collect()),
            Expr::Mul(ops) => norm_mul(ops.iter().map(|o| o.substitute(s)).collect()),
            Expr::Pow(b, e) => norm_pow(b.substitute(s), e.substitute(s)),
            Expr::Factorial(a) => norm_factorial(a.substitute(s)),
            Expr::Gamma(a) => norm_gamma(a.substitute(s)),
            Expr::Binomial(t, b) => norm_binomial(t.substitute(s), b.substitute(s)),
            Expr::Pochhammer(a, c) => norm_pochhammer(a.substitute(s), c.substitute(s)),
            Expr::Prod(body, idx, lo, hi) => {
                if idx == &s.target {
                    // the index is bound inside the body
                    return norm_prod(
                        (**body).clone(),
                        idx.clone(),
                        lo.substitute(s),
                        hi.substitute(s),
                    );
                }
                if s.replacement.contains_symbol(idx) {
                    // capture: rename the bound index first
                    let fresh = fresh_symbol(idx, &[body, &s.replacement]);
                    let rename = Substitution::new(idx, Expr::sym(&fresh)).expect("symbol");
                    let body2 = body.substitute(&rename);
                    return norm_prod(
                        body2.substitute(s),
                        fresh,
                        lo.substitute(s),
                        hi.substitute(s),
                    );
                }
                norm_prod(
                    body.substitute(s),
                    idx.clone(),
                    lo.substitute(s),
                    hi.substitute(s),
                )
            }
        }
    }

    /// substitute target -> target + delta
    pub fn shift_symbol(&self, target: &str, delta: i64) -> Expr {
        let repl = Expr::add2(Expr::sym(target), Expr::int(delta));
        self.substitute(&Substitution::new(target, repl).expect("shift"))
    }

    pub fn contains_symbol(&self, name: &str) -> bool {
        match self {
            Expr::Symbol(s) => s == name,
            Expr::Integer(_) | Expr::Rational(_) | Expr::SumRef(_) => false,
            Expr::Add(ops) | Expr::Mul(ops) => ops.iter().any(|o| o.contains_symbol(name)),
            Expr::Pow(a, b) | Expr::Binomial(a, b) | Expr::Pochhammer(a, b) => {
                a.contains_symbol(name) || b.contains_symbol(name)
            }
            Expr::Factorial(a) | Expr::Gamma(a) => a.contains_symbol(name),
            Expr::Prod(body, idx, lo, hi) => {
                (idx != name && body.contains_symbol(name))
                    || lo.contains_symbol(name)
                    || hi.contains_symbol(name)
            }
        }
    }

    pub fn contains_sumref(&self) -> bool {
        match self {
            Expr::SumRef(_) => true,
            Expr::Integer(_) | Expr::Rational(_) | Expr::Symbol(_) => false,
            Expr::Add(ops) | Expr::Mul(ops) => ops.iter().any(|o| o.contains_sumref()),
            Expr::Pow(a, b) | Expr::Binomial(a, b) | Expr::Pochhammer(a, b) => {
                a.contains_sumref() || b.contains_sumref()
            }
            Expr::Factorial(a) | Expr::Gamma(a) => a.contains_sumref(),
            Expr::Prod(body, _, lo, hi) => {
                body.contains_sumref() || lo.contains_sumref() || hi.contains_sumref()
            }
        }
    }

    pub fn free_symbols(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Symbol(s) => {
                out.insert(s.clone());
            }
            Expr::Integer(_) | Expr::Rational(_) | Expr::SumRef(_) => {}
            Expr::Add(ops) | Expr::Mul(ops) => {
                for o in ops {
                    o.collect_free(out);
                }
            }
            Expr::Pow(a, b) | Expr::Binomial(a, b) | Expr::Pochhammer(a, b) => {
                a.collect_free(out);
                b.collect_free(out);
            }
            Expr::Factorial(a) | Expr::Gamma(a) => a.collect_free(out),
            Expr::Prod(body, idx, lo, hi) => {
                let mut inner = BTreeSet::new();
                body.collect_free(&mut inner);
                inner.remove(idx);
                out.extend(inner);
                lo.collect_free(out);
                hi.collect_free(out);
            }
        }
    }

    /// Conversion to a rational function when the expression is built from
    /// literals, symbols, +, *, and integer powers.
    pub fn to_ratfun(&self) -> Option<RationalFunction> {
        expr_to_ratfun(self)
    }
}

fn fresh_symbol(base: &str, avoid_in: &[&Expr]) -> String {
    let mut used = BTreeSet::new();
    for e in avoid_in {
        used.extend(e.free_symbols());
    }
    for i in 1u32.. {
        let cand = format!("{}{}", base, i);
        if !used.contains(&cand) {
            return cand;
        }
    }
    unreachable!()
}

// ---- total order ----

fn rank(e: &Expr) -> u8 {
    match e {
        Expr::Integer(_) | Expr::Rational(_) => 0,
        Expr::Symbol(_) => 1,
        Expr::SumRef(_) => 2,
        Expr::Factorial(_) => 3,
        Expr::Gamma(_) => 4,
        Expr::Binomial(_, _) => 5,
        Expr::Pochhammer(_, _) => 6,
        Expr::Prod(_, _, _, _) => 7,
        Expr::Pow(_, _) => 8,
        Expr::Mul(_) => 9,
        Expr::Add(_) => 10,
    }
}

impl Ord for Expr {
    fn cmp(&self, other: &Self) -> Ordering {
        // literals compare by value regardless of Integer/Rational kind
        if let (Some(a), Some(b)) = (self.as_rat(), other.as_rat()) {
            return a.cmp(&b);
        }
        rank(self).cmp(&rank(other)).then_with(|| match (self, other) {
            (Expr::Symbol(a), Expr::Symbol(b)) => a.cmp(b),
            (Expr::SumRef(a), Expr::SumRef(b)) => a.cmp(b),
            (Expr::Factorial(a), Expr::Factorial(b)) | (Expr::Gamma(a), Expr::Gamma(b)) => {
                a.cmp(b)
            }
            (Expr::Binomial(a1, a2), Expr::Binomial(b1, b2))
            | (Expr::Pochhammer(a1, a2), Expr::Pochhammer(b1, b2))
            | (Expr::Pow(a1, a2), Expr::Pow(b1, b2)) => {
                a1.cmp(b1).then_with(|| a2.cmp(b2))
            }
            (Expr::Prod(ab, ai, al, ah), Expr::Prod(bb, bi, bl, bh)) => ab
                .cmp(bb)
                .then_with(|| ai.cmp(bi))
                .then_with(|| al.cmp(bl))
                .then_with(|| ah.cmp(bh)),
            (Expr::Add(a), Expr::Add(b)) | (Expr::Mul(a), Expr::Mul(b)) => {
                for (x, y) in a.iter().zip(b.iter()) {
                    let c = x.cmp(y);
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                a.len().cmp(&b.len())
            }
            _ => unreachable!("rank equality implies same variant"),
        })
    }
}

impl PartialOrd for Expr {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// ---- normalizers (children are assumed canonical) ----

/// Split a canonical term into (numeric coefficient, key).
fn coeff_split(e: Expr) -> (Rat, Expr) {
    match e {
        Expr::Integer(_) | Expr::Rational(_) => {
            let r = e.as_rat().unwrap();
            (r, Expr::one())
        }
        Expr::Mul(ops) => {
            if let Some(c) = ops[0].as_rat() {
                let rest: Vec<Expr> = ops[1..].to_vec();
                let key = if rest.len() == 1 {
                    rest.into_iter().next().unwrap()
                } else {
                    Expr::Mul(rest)
                };
                (c, key)
            } else {
                (Rat::one(), Expr::Mul(ops))
            }
        }
        other => (Rat::one(), other),
    }
}

fn norm_add(ops: Vec<Expr>) -> Expr {
    let mut terms: BTreeMap<Expr, Rat> = BTreeMap::new();
    let mut stack = ops;
    stack.reverse();
    while let Some(op) = stack.pop() {
        match op {
            Expr::Add(inner) => {
                for x in inner.into_iter().rev() {
                    stack.push(x);
                }
            }
            other => {
                let (c, key) = coeff_split(other);
                if c.is_zero() {
                    continue;
                }
                match terms.get_mut(&key) {
                    Some(acc) => {
                        *acc += c;
                        if acc.is_zero() {
                            terms.remove(&key);
                        }
                    }
                    None => {
                        terms.insert(key, c);
                    }
                }
            }
        }
    }
    let mut out: Vec<Expr> = Vec::with_capacity(terms.len());
    for (key, c) in terms {
        if key.is_one_lit() {
            out.push(Expr::from_rat(c));
        } else if c.is_one() {
            out.push(key);
        } else {
            // prepend the coefficient to the (already sorted) factor list
            let mut factors = vec![Expr::from_rat(c)];
            match key {
                Expr::Mul(ops) => factors.extend(ops),
                other => factors.push(other),
            }
            out.push(Expr::Mul(factors));
        }
    }
    match out.len() {
        0 => Expr::zero(),
        1 => out.into_iter().next().unwrap(),
        _ => Expr::Add(out),
    }
}

fn norm_mul(ops: Vec<Expr>) -> Expr {
    let mut coeff = Rat::one();
    let mut bases: BTreeMap<Expr, Vec<Expr>> = BTreeMap::new();
    let mut kept_zero_pow: Vec<Expr> = Vec::new();
    let mut stack = ops;
    stack.reverse();
    while let Some(op) = stack.pop() {
        match op {
            Expr::Mul(inner) => {
                for x in inner.into_iter().rev() {
                    stack.push(x);
                }
            }
            Expr::Integer(_) | Expr::Rational(_) => {
                coeff *= op.as_rat().unwrap();
            }
            Expr::Pow(b, e) => {
                if b.is_zero_lit() {
                    // 0^e with a non-literal or negative exponent survives
                    kept_zero_pow.push(Expr::Pow(b, e));
                } else {
                    bases.entry(*b).or_default().push(*e);
                }
            }
            other => {
                bases.entry(other).or_default().push(Expr::one());
            }
        }
    }
    if coeff.is_zero() {
        return Expr::zero();
    }
    let mut factors: Vec<Expr> = kept_zero_pow;
    for (base, exps) in bases {
        let exp = norm_add(exps);
        if exp.is_zero_lit() {
            continue;
        }
        let f = norm_pow(base, exp);
        match f {
            Expr::Integer(_) | Expr::Rational(_) => coeff *= f.as_rat().unwrap(),
            Expr::Mul(inner) => {
                // a split like (-1)^(k+1) -> -1 * (-1)^k can reintroduce a
                // coefficient and another factor
                for x in inner {
                    match x {
                        Expr::Integer(_) | Expr::Rational(_) => coeff *= x.as_rat().unwrap(),
                        other => factors.push(other),
                    }
                }
            }
            other => factors.push(other),
        }
    }
    if coeff.is_zero() {
        return Expr::zero();
    }
    // distribute over sums
    let sums: Vec<Vec<Expr>> = factors
        .iter()
        .filter_map(|f| match f {
            Expr::Add(t) => Some(t.clone()),
            _ => None,
        })
        .collect();
    if !sums.is_empty() {
        let atoms: Vec<Expr> = factors
            .into_iter()
            .filter(|f| !matches!(f, Expr::Add(_)))
            .collect();
        let mut terms: Vec<Vec<Expr>> = vec![Vec::new()];
        for sum in &sums {
            let mut next = Vec::with_capacity(terms.len() * sum.len());
            for t in &terms {
                for pick in sum {
                    let mut t2 = t.clone();
                    t2.push(pick.clone());
                    next.push(t2);
                }
            }
            terms = next;
        }
        let coeff_expr = Expr::from_rat(coeff);
        let expanded: Vec<Expr> = terms
            .into_iter()
            .map(|mut picks| {
                picks.push(coeff_expr.clone());
                picks.extend(atoms.iter().cloned());
                norm_mul(picks)
            })
            .collect();
        return norm_add(expanded);
    }
    factors.sort();
    if factors.is_empty() {
        return Expr::from_rat(coeff);
    }
    if coeff.is_one() && factors.len() == 1 {
        return factors.into_iter().next().unwrap();
    }
    let mut out = Vec::with_capacity(factors.len() + 1);
    if !coeff.is_one() {
        out.push(Expr::from_rat(coeff));
    }
    out.extend(factors);
    if out.len() == 1 {
        out.into_iter().next().unwrap()
    } else {
        Expr::Mul(out)
    }
}

/// Distribute the product of two (possibly) sums term by term.
fn mul_sums(a: &Expr, b: &Expr) -> Expr {
    let ta: Vec<Expr> = match a {
        Expr::Add(ops) => ops.clone(),
        other => vec![other.clone()],
    };
    let tb: Vec<Expr> = match b {
        Expr::Add(ops) => ops.clone(),
        other => vec![other.clone()],
    };
    let mut out = Vec::with_capacity(ta.len() * tb.len());
    for x in &ta {
        for y in &tb {
            out.push(norm_mul(vec![x.clone(), y.clone()]));
        }
    }
    norm_add(out)
}

fn pow_rat(base: &Rat, e: i64) -> Rat {
    let mut acc = Rat::one();
    let mut b = if e < 0 { base.recip() } else { base.clone() };
    let mut n = e.unsigned_abs();
    while n > 0 {
        if n & 1 == 1 {
            acc *= &b;
        }
        n >>= 1;
        if n > 0 {
            b = &b * &b;
        }
    }
    acc
}

fn norm_pow(base: Expr, exp: Expr) -> Expr {
    if exp.is_zero_lit() {
        return Expr::one();
    }
    if exp.is_one_lit() {
        return base;
    }
    // literal base
    if let Some(b) = base.as_rat() {
        if b.is_one() {
            return Expr::one();
        }
        if let Some(e) = exp.as_i64() {
            if e.abs() <= FOLD_POW_LIMIT && !(b.is_zero() && e < 0) {
                return Expr::from_rat(pow_rat(&b, e));
            }
        }
        // fold an integer factor of the exponent into the base: b^(c*rest)
        if let Expr::Mul(ops) = &exp {
            if let Some(c) = ops[0].as_i64() {
                if c.abs() <= 16 && !b.is_zero() {
                    let rest: Vec<Expr> = ops[1..].to_vec();
                    let rest_exp = if rest.len() == 1 {
                        rest.into_iter().next().unwrap()
                    } else {
                        Expr::Mul(rest)
                    };
                    return norm_pow(Expr::from_rat(pow_rat(&b, c)), rest_exp);
                }
            }
        }
        // split an integer part out of the exponent: b^(c + rest)
        if let Expr::Add(terms) = &exp {
            if !b.is_zero() {
                if let Some(pos) = terms.iter().position(|t| {
                    t.as_i64().map(|c| c.abs() <= FOLD_POW_LIMIT).unwrap_or(false)
                }) {
                    let c = terms[pos].as_i64().unwrap();
                    let rest: Vec<Expr> =
                        terms.iter().enumerate().filter(|(i, _)| *i != pos).map(|(_, t)| t.clone()).collect();
                    let rest_exp = if rest.len() == 1 {
                        rest.into_iter().next().unwrap()
                    } else {
                        Expr::Add(rest)
                    };
                    return norm_mul(vec![
                        Expr::from_rat(pow_rat(&b, c)),
                        Expr::Pow(Box::new(base), Box::new(rest_exp)),
                    ]);
                }
            }
        }
        return Expr::Pow(Box::new(base), Box::new(exp));
    }
    match base {
        Expr::Pow(b2, e2) => {
            if exp.as_integer().is_some() || e2.as_integer().is_some() {
                let merged = norm_mul(vec![*e2, exp]);
                norm_pow(*b2, merged)
            } else {
                Expr::Pow(Box::new(Expr::Pow(b2, e2)), Box::new(exp))
            }
        }
        Expr::Mul(ops) => {
            if exp.as_integer().is_some() {
                norm_mul(ops.into_iter().map(|o| norm_pow(o, exp.clone())).collect())
            } else {
                Expr::Pow(Box::new(Expr::Mul(ops)), Box::new(exp))
            }
        }
        Expr::Add(_) => {
            if let Some(m) = exp.as_i64() {
                if (2..=EXPAND_SUM_POW_LIMIT).contains(&m) {
                    let mut acc = base.clone();
                    for _ in 1..m {
                        acc = mul_sums(&acc, &base);
                    }
                    return acc;
                }
            }
            Expr::Pow(Box::new(base), Box::new(exp))
        }
        other => Expr::Pow(Box::new(other), Box::new(exp)),
    }
}

fn factorial_value(n: i64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

fn norm_factorial(a: Expr) -> Expr {
    if let Some(n) = a.as_i64() {
        if (0..=EXPAND_FUNC_LIMIT).contains(&n) {
            return Expr::Integer(factorial_value(n));
        }
    }
    Expr::Factorial(Box::new(a))
}

fn norm_gamma(a: Expr) -> Expr {
    if let Some(n) = a.as_i64() {
        if (1..=EXPAND_FUNC_LIMIT).contains(&n) {
            return Expr::Integer(factorial_value(n - 1));
        }
    }
    Expr::Gamma(Box::new(a))
}

fn norm_binomial(top: Expr, bottom: Expr) -> Expr {
    if let Some(m) = bottom.as_i64() {
        if m < 0 {
            return Expr::zero();
        }
        if m <= EXPAND_FUNC_LIMIT {
            // binomial(t, m) = t (t-1) ... (t-m+1) / m!
            let mut factors: Vec<Expr> = Vec::with_capacity(m as usize + 1);
            for i in 0..m {
                factors.push(norm_add(vec![top.clone(), Expr::int(-i)]));
            }
            factors.push(Expr::from_rat(Rat::new(
                BigInt::one(),
                factorial_value(m),
            )));
            return norm_mul(factors);
        }
    }
    Expr::Binomial(Box::new(top), Box::new(bottom))
}

fn norm_pochhammer(base: Expr, count: Expr) -> Expr {
    if let Some(m) = count.as_i64() {
        if m.abs() <= EXPAND_FUNC_LIMIT {
            if m >= 0 {
                let factors: Vec<Expr> = (0..m)
                    .map(|i| norm_add(vec![base.clone(), Expr::int(i)]))
                    .collect();
                return norm_mul(factors);
            }
            // (a)_(-m) = 1 / ((a-1)(a-2)...(a-m))
            let factors: Vec<Expr> = (1..=-m)
                .map(|i| {
                    norm_pow(
                        norm_add(vec![base.clone(), Expr::int(-i)]),
                        Expr::int(-1),
                    )
                })
                .collect();
            return norm_mul(factors);
        }
    }
    Expr::Pochhammer(Box::new(base), Box::new(count))
}

fn norm_prod(body: Expr, idx: String, lo: Expr, hi: Expr) -> Expr {
    // the bound index must not occur free in the bounds
    let (body, idx) = if lo.contains_symbol(&idx) || hi.contains_symbol(&idx) {
        let fresh = fresh_symbol(&idx, &[&body, &lo, &hi]);
        let rename = Substitution::new(&idx, Expr::sym(&fresh)).expect("symbol");
        (body.substitute(&rename), fresh)
    } else {
        (body, idx)
    };
    if let (Some(l), Some(h)) = (lo.as_i64(), hi.as_i64()) {
        if h < l {
            return Expr::one();
        }
        if h - l <= EXPAND_FUNC_LIMIT {
            let factors: Vec<Expr> = (l..=h)
                .map(|i| {
                    body.substitute(&Substitution::new(&idx, Expr::int(i)).expect("literal"))
                })
                .collect();
            return norm_mul(factors);
        }
    }
    Expr::Prod(Box::new(body), idx, Box::new(lo), Box::new(hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> Expr {
        Expr::sym("k")
    }

    fn n() -> Expr {
        Expr::sym("n")
    }

    #[test]
    fn add_collects_like_terms() {
        // k + k + 1 - 1 = 2k
        let e = Expr::add(vec![k(), k(), Expr::int(1), Expr::int(-1)]);
        assert_eq!(e, Expr::mul2(Expr::int(2), k()));
    }

    #[test]
    fn mul_merges_bases() {
        // k * k = k^2, a^k * a = a^(k+1)
        assert_eq!(Expr::mul2(k(), k()), Expr::pow(k(), Expr::int(2)));
        let a = Expr::sym("a");
        let e = Expr::mul2(Expr::pow(a.clone(), k()), a.clone());
        assert_eq!(e, Expr::pow(a, Expr::add2(k(), Expr::int(1))));
    }

    #[test]
    fn pow_folds_numeric() {
        assert_eq!(Expr::pow(Expr::int(2), Expr::int(10)), Expr::int(1024));
        assert_eq!(
            Expr::pow(Expr::int(4), Expr::int(-1)),
            Expr::from_rat(crate::field::rat_frac(1, 4))
        );
    }

    #[test]
    fn pow_splits_integer_exponent_part() {
        // (-1)^(k+1) = -(-1)^k
        let e = Expr::pow(Expr::int(-1), Expr::add2(k(), Expr::int(1)));
        let expect = Expr::neg(Expr::pow(Expr::int(-1), k()));
        assert_eq!(e, expect);
    }

    #[test]
    fn substitution_forces_expansion() {
        // substitute(n^2 + k, n -> n+1) = n^2 + 2n + 1 + k
        let e = Expr::add2(Expr::pow(n(), Expr::int(2)), k());
        let s = Substitution::new("n", Expr::add2(n(), Expr::int(1))).unwrap();
        let got = e.substitute(&s);
        let expect = Expr::add(vec![
            Expr::pow(n(), Expr::int(2)),
            Expr::mul2(Expr::int(2), n()),
            Expr::int(1),
            k(),
        ]);
        assert_eq!(got, expect);
    }

    #[test]
    fn substitution_into_prod_bounds_only() {
        // substitute(prod(f(j), j, 1, k), k -> k-1) changes the bound
        let body = Expr::add2(Expr::sym("j"), Expr::int(1));
        let p = Expr::prod(body.clone(), "j", Expr::int(1), k());
        let s = Substitution::new("k", Expr::add2(k(), Expr::int(-1))).unwrap();
        let got = p.substitute(&s);
        let expect = Expr::prod(body, "j", Expr::int(1), Expr::add2(k(), Expr::int(-1)));
        assert_eq!(got, expect);
    }

    #[test]
    fn prod_alpha_renames_on_capture() {
        // substitute(prod(j+k, j, 1, m), k -> j) must not capture
        let body = Expr::add2(Expr::sym("j"), k());
        let p = Expr::prod(body, "j", Expr::int(1), Expr::sym("m"));
        let s = Substitution::new("k", Expr::sym("j")).unwrap();
        let got = p.substitute(&s);
        match got {
            Expr::Prod(body, idx, _, _) => {
                assert_ne!(idx, "j");
                assert!(body.contains_symbol("j"));
                assert!(body.contains_symbol(&idx));
            }
            other => panic!("expected prod, got {:?}", other),
        }
    }

    #[test]
    fn binomial_literal_folding() {
        assert_eq!(
            Expr::binomial(Expr::int(7), Expr::int(3)),
            Expr::int(35)
        );
        assert_eq!(
            Expr::binomial(n(), Expr::int(-2)),
            Expr::zero()
        );
        // binomial(-3, 2) = 6
        assert_eq!(
            Expr::binomial(Expr::int(-3), Expr::int(2)),
            Expr::int(6)
        );
    }

    #[test]
    fn pochhammer_expansion() {
        // (a)_3 = a(a+1)(a+2)
        let a = Expr::sym("a");
        let e = Expr::pochhammer(a.clone(), Expr::int(3));
        let expect = Expr::mul(vec![
            a.clone(),
            Expr::add2(a.clone(), Expr::int(1)),
            Expr::add2(a.clone(), Expr::int(2)),
        ]);
        assert_eq!(e, expect);
        // (1)_4 = 24
        assert_eq!(Expr::pochhammer(Expr::int(1), Expr::int(4)), Expr::int(24));
    }

    #[test]
    fn prod_numeric_expansion() {
        // prod(j^2, j, 1, 3) = 36; empty product = 1
        let body = Expr::pow(Expr::sym("j"), Expr::int(2));
        assert_eq!(
            Expr::prod(body.clone(), "j", Expr::int(1), Expr::int(3)),
            Expr::int(36)
        );
        assert_eq!(
            Expr::prod(body, "j", Expr::int(1), Expr::int(0)),
            Expr::one()
        );
    }

    #[test]
    fn canonical_idempotent_on_samples() {
        let samples = vec![
            Expr::mul(vec![
                Expr::add2(k(), Expr::int(1)),
                Expr::add2(k(), Expr::int(-1)),
            ]),
            Expr::pow(Expr::add2(n(), Expr::int(1)), Expr::int(-2)),
            Expr::factorial(Expr::add2(Expr::mul2(Expr::int(2), k()), Expr::int(1))),
            Expr::div2(Expr::binomial(n(), k()), Expr::add2(n(), Expr::int(1))),
        ];
        for e in samples {
            assert_eq!(e.canonical(), e);
        }
    }

    #[test]
    fn substitution_composition() {
        // substitute(substitute(e, n->n+1), n->0) = substitute(e, n->1)
        let e = Expr::add(vec![
            Expr::pow(n(), Expr::int(3)),
            Expr::mul2(n(), k()),
            Expr::int(5),
        ]);
        let s1 = Substitution::new("n", Expr::add2(n(), Expr::int(1))).unwrap();
        let s0 = Substitution::new("n", Expr::int(0)).unwrap();
        let sone = Substitution::new("n", Expr::int(1)).unwrap();
        assert_eq!(e.substitute(&s1).substitute(&s0), e.substitute(&sone));
    }
}
