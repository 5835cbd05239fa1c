//! Independent correctness checks: brute-force finite summation,
//! antidifference verification, recurrence verification, and canonical
//! comparison of engine outputs.
//!
//! Numeric evaluation is exact over the rationals extended by g = gamma(1/2),
//! so half-integer factorial instances (values in Q * g^e) check exactly too.

use std::collections::BTreeMap;

use num::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::expr::{Expr, Substitution};
use crate::field::{rat_as_i64, rat_int, Rat};
use crate::simplify::{decompose, merged, Direction};
use crate::zeilberger::{to_direction, RecDirection, Recurrence};

pub use crate::zeilberger::recurrences_equal;

/// Fixed seed for reproducible random instantiations, recorded in reports.
pub const DEFAULT_SEED: u64 = 0x5eed_cafe;

const SUPPORT_SCAN: i64 = 200;
const ZERO_FLANK: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    SkippedPole,
}

#[derive(Clone, Debug)]
pub struct Evidence {
    pub assignment: Vec<(String, String)>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub verdict: Verdict,
    pub evidence: Vec<Evidence>,
    pub seed: u64,
}

impl CheckReport {
    fn pass(seed: u64) -> Self {
        CheckReport {
            verdict: Verdict::Pass,
            evidence: Vec::new(),
            seed,
        }
    }
}

// ---- exact evaluation over Q * gamma(1/2)^e ----

/// A value c * g^e with c rational and g = gamma(1/2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QG {
    pub rat: Rat,
    pub gexp: i64,
}

impl QG {
    fn from_rat(r: Rat) -> Self {
        QG { rat: r, gexp: 0 }
    }

    fn zero() -> Self {
        Self::from_rat(Rat::zero())
    }

    fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero()
    }

    fn normalize(mut self) -> Self {
        if self.rat.is_zero() {
            self.gexp = 0;
        }
        self
    }

    fn mul(&self, other: &QG) -> QG {
        QG {
            rat: &self.rat * &other.rat,
            gexp: self.gexp + other.gexp,
        }
        .normalize()
    }

    fn add(&self, other: &QG) -> Option<QG> {
        if self.is_zero() {
            return Some(other.clone());
        }
        if other.is_zero() {
            return Some(self.clone());
        }
        if self.gexp != other.gexp {
            return None; // not representable in Q * g^e
        }
        Some(
            QG {
                rat: &self.rat + &other.rat,
                gexp: self.gexp,
            }
            .normalize(),
        )
    }

    fn pow(&self, e: i64) -> Option<QG> {
        if e == 0 {
            return Some(QG::one());
        }
        if self.is_zero() {
            return if e > 0 { Some(QG::zero()) } else { None };
        }
        Some(QG {
            rat: pow_rat(&self.rat, e),
            gexp: self.gexp * e,
        })
    }

    pub fn display(&self) -> String {
        if self.gexp == 0 {
            fmt_rat(&self.rat)
        } else {
            format!("{}*gamma(1/2)^{}", fmt_rat(&self.rat), self.gexp)
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

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalOutcome {
    Value(QG),
    /// A pole of gamma/factorial or a division by zero.
    Pole,
    /// Pole and zero met in one product (term of a terminated series).
    ZeroOverZero,
    /// Not representable (irrational gamma argument, symbolic leftover, ...).
    NonNumeric,
}

use EvalOutcome::*;

/// Exact evaluation with every free symbol assigned.
pub fn eval(e: &Expr, env: &BTreeMap<String, Rat>) -> EvalOutcome {
    match e {
        Expr::Integer(_) | Expr::Rational(_) => Value(QG::from_rat(e.as_rat().unwrap())),
        Expr::Symbol(s) => match env.get(s) {
            Some(v) => Value(QG::from_rat(v.clone())),
            None => NonNumeric,
        },
        Expr::SumRef(_) => NonNumeric,
        Expr::Add(ops) => {
            let mut acc = QG::zero();
            for op in ops {
                match eval(op, env) {
                    Value(v) => match acc.add(&v) {
                        Some(s) => acc = s,
                        None => return NonNumeric,
                    },
                    other => return other,
                }
            }
            Value(acc)
        }
        Expr::Mul(ops) => {
            let mut acc = QG::one();
            let mut saw_pole = false;
            let mut saw_zero = false;
            for op in ops {
                match eval(op, env) {
                    Value(v) => {
                        if v.is_zero() {
                            saw_zero = true;
                        }
                        acc = acc.mul(&v);
                    }
                    Pole => saw_pole = true,
                    ZeroOverZero => return ZeroOverZero,
                    NonNumeric => return NonNumeric,
                }
            }
            match (saw_pole, saw_zero) {
                (true, true) => ZeroOverZero,
                (true, false) => Pole,
                _ => Value(acc),
            }
        }
        Expr::Pow(b, ex) => {
            let exp = match eval(ex, env) {
                Value(v) if v.gexp == 0 => match rat_as_i64(&v.rat) {
                    Some(z) => z,
                    None => return NonNumeric,
                },
                Value(_) => return NonNumeric,
                other => return other,
            };
            match eval(b, env) {
                Value(v) => match v.pow(exp) {
                    Some(p) => Value(p),
                    None => Pole, // 0^negative
                },
                // the reciprocal gamma function vanishes at poles
                Pole => {
                    if exp < 0 {
                        Value(QG::zero())
                    } else if exp == 0 {
                        Value(QG::one())
                    } else {
                        Pole
                    }
                }
                other => other,
            }
        }
        Expr::Factorial(a) => match eval(a, env) {
            Value(v) if v.gexp == 0 => gamma_value(&(&v.rat + Rat::one())),
            Value(_) => NonNumeric,
            other => other,
        },
        Expr::Gamma(a) => match eval(a, env) {
            Value(v) if v.gexp == 0 => gamma_value(&v.rat),
            Value(_) => NonNumeric,
            other => other,
        },
        Expr::Binomial(t, b) => {
            let bv = match eval(b, env) {
                Value(v) if v.gexp == 0 => v.rat,
                Value(_) => return NonNumeric,
                other => return other,
            };
            let tv = match eval(t, env) {
                Value(v) if v.gexp == 0 => v.rat,
                Value(_) => return NonNumeric,
                other => return other,
            };
            match rat_as_i64(&bv) {
                Some(m) if m < 0 => Value(QG::zero()),
                Some(m) => {
                    // t (t-1) ... (t-m+1) / m!
                    let mut num = Rat::one();
                    for i in 0..m {
                        num *= &tv - rat_int(i);
                    }
                    let mut fact = Rat::one();
                    for i in 2..=m {
                        fact *= rat_int(i);
                    }
                    Value(QG::from_rat(num / fact))
                }
                None => NonNumeric,
            }
        }
        Expr::Pochhammer(a, c) => {
            let cv = match eval(c, env) {
                Value(v) if v.gexp == 0 => v.rat,
                Value(_) => return NonNumeric,
                other => return other,
            };
            let av = match eval(a, env) {
                Value(v) if v.gexp == 0 => v.rat,
                Value(_) => return NonNumeric,
                other => return other,
            };
            match rat_as_i64(&cv) {
                Some(m) if m >= 0 => {
                    let mut acc = Rat::one();
                    for i in 0..m {
                        acc *= &av + rat_int(i);
                    }
                    Value(QG::from_rat(acc))
                }
                Some(m) => {
                    // (a)_(-m) = 1 / ((a-1)...(a+m))
                    let mut acc = Rat::one();
                    for i in 1..=(-m) {
                        let f = &av - rat_int(i);
                        if f.is_zero() {
                            return Pole;
                        }
                        acc *= f;
                    }
                    Value(QG::from_rat(acc.recip()))
                }
                None => NonNumeric,
            }
        }
        Expr::Prod(body, idx, lo, hi) => {
            let l = match eval(lo, env) {
                Value(v) if v.gexp == 0 => match rat_as_i64(&v.rat) {
                    Some(z) => z,
                    None => return NonNumeric,
                },
                Value(_) => return NonNumeric,
                other => return other,
            };
            let h = match eval(hi, env) {
                Value(v) if v.gexp == 0 => match rat_as_i64(&v.rat) {
                    Some(z) => z,
                    None => return NonNumeric,
                },
                Value(_) => return NonNumeric,
                other => return other,
            };
            if h < l {
                return Value(QG::one());
            }
            if h - l > 100_000 {
                return NonNumeric;
            }
            let mut acc = QG::one();
            let mut env2 = env.clone();
            for i in l..=h {
                env2.insert(idx.clone(), rat_int(i));
                match eval(body, &env2) {
                    Value(v) => acc = acc.mul(&v),
                    other => return other,
                }
            }
            Value(acc)
        }
    }
}

/// gamma at a rational point: exact for positive integers (factorials) and
/// half-integers (rational multiple of gamma(1/2)); pole at nonpositive
/// integers.
fn gamma_value(x: &Rat) -> EvalOutcome {
    if let Some(z) = rat_as_i64(x) {
        if z <= 0 {
            return Pole;
        }
        let mut acc = Rat::one();
        for i in 2..z {
            acc *= rat_int(i);
        }
        return Value(QG::from_rat(acc));
    }
    if *x.denom() == num::BigInt::from(2) {
        // x = m + 1/2: gamma(x) = g * prod_{i=0}^{m-1} (1/2 + i), inverted
        // for negative m
        let half = Rat::new(num::BigInt::one(), num::BigInt::from(2));
        let m = match rat_as_i64(&(x - half)) {
            Some(m) if m.abs() <= 100_000 => m,
            _ => return NonNumeric,
        };
        let mut acc = Rat::one();
        if m >= 0 {
            for i in 0..m {
                acc *= Rat::new(num::BigInt::from(2 * i + 1), num::BigInt::from(2));
            }
        } else {
            for i in m..0 {
                acc *= Rat::new(num::BigInt::from(2 * i + 1), num::BigInt::from(2));
            }
            acc = acc.recip();
        }
        return Value(QG {
            rat: acc,
            gexp: 1,
        });
    }
    NonNumeric
}

// ---- finite sums ----

/// Exact sum over k = lo..hi; other symbols may remain symbolic.
pub fn finite_sum(f: &Expr, k: &str, lo: i64, hi: i64) -> Result<Expr> {
    if lo > hi {
        return Err(Error::InvalidInput("finite_sum needs lo <= hi".into()));
    }
    let mut terms = Vec::with_capacity((hi - lo + 1) as usize);
    for i in lo..=hi {
        let term = f.substitute(&Substitution::new(k, Expr::int(i))?);
        if has_literal_pole(&term) {
            return Err(Error::PoleAtPoint(format!("{} = {}", k, i)));
        }
        if term.free_symbols().is_empty() {
            match eval(&term, &BTreeMap::new()) {
                Pole | ZeroOverZero => {
                    return Err(Error::PoleAtPoint(format!("{} = {}", k, i)))
                }
                _ => {}
            }
        }
        terms.push(term);
    }
    Ok(Expr::add(terms))
}

/// Second, independently ordered accumulation (pairwise tree) for the oracle
/// cross-check.
pub fn finite_sum_pairwise(f: &Expr, k: &str, lo: i64, hi: i64) -> Result<Expr> {
    if lo > hi {
        return Err(Error::InvalidInput("finite_sum needs lo <= hi".into()));
    }
    let mut layer: Vec<Expr> = Vec::new();
    for i in lo..=hi {
        layer.push(f.substitute(&Substitution::new(k, Expr::int(i))?));
    }
    while layer.len() > 1 {
        let mut next = Vec::with_capacity(layer.len() / 2 + 1);
        let mut it = layer.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(Expr::add2(a, b)),
                None => next.push(a),
            }
        }
        layer = next;
    }
    Ok(layer.into_iter().next().unwrap_or_else(Expr::zero))
}

fn has_literal_pole(e: &Expr) -> bool {
    match e {
        Expr::Integer(_) | Expr::Rational(_) | Expr::Symbol(_) | Expr::SumRef(_) => false,
        Expr::Factorial(a) => {
            matches!(&**a, Expr::Integer(n) if n.is_negative()) || has_literal_pole(a)
        }
        Expr::Gamma(a) => {
            matches!(&**a, Expr::Integer(n) if !n.is_positive()) || has_literal_pole(a)
        }
        Expr::Pow(b, ex) => {
            (b.is_zero_lit()
                && matches!(&**ex, Expr::Integer(n) if n.is_negative()))
                || has_literal_pole(b)
                || has_literal_pole(ex)
        }
        Expr::Add(ops) | Expr::Mul(ops) => ops.iter().any(has_literal_pole),
        Expr::Binomial(a, b) | Expr::Pochhammer(a, b) => {
            has_literal_pole(a) || has_literal_pole(b)
        }
        Expr::Prod(body, _, lo, hi) => {
            has_literal_pole(body) || has_literal_pole(lo) || has_literal_pole(hi)
        }
    }
}

// ---- antidifference check ----

/// Verify g(k) - g(k-1) = a(k) (or the upward analogue): symbolically via
/// the gamma-product normalizer, with an exact numeric fallback at 20 random
/// points.
pub fn check_antidifference(
    g: &Expr,
    a: &Expr,
    k: &str,
    direction: Direction,
) -> CheckReport {
    let diff = match direction {
        Direction::Down => Expr::sub2(g.clone(), g.shift_symbol(k, -1)),
        Direction::Up => Expr::sub2(g.shift_symbol(k, 1), g.clone()),
    };
    // symbolic route: (diff - a) normalizes to zero
    let delta = Expr::sub2(diff.clone(), a.clone());
    if let Ok(gp) = decompose(&delta).and_then(merged) {
        if gp.is_zero() {
            return CheckReport::pass(DEFAULT_SEED);
        }
        if gp.is_rational() {
            // a nonzero rational residue is a definite failure
            return fail_with_symbol_evidence(&diff, a, k, DEFAULT_SEED);
        }
    }
    // numeric fallback
    numeric_equality_check(&diff, a, k, 20, DEFAULT_SEED)
}

fn fail_with_symbol_evidence(lhs: &Expr, rhs: &Expr, k: &str, seed: u64) -> CheckReport {
    // find one concrete counterexample for the evidence list
    let numeric = numeric_equality_check(lhs, rhs, k, 8, seed);
    if numeric.verdict == Verdict::Fail {
        return numeric;
    }
    CheckReport {
        verdict: Verdict::Fail,
        evidence: vec![Evidence {
            assignment: Vec::new(),
            lhs: crate::expr::print(lhs),
            rhs: crate::expr::print(rhs),
        }],
        seed,
    }
}

fn numeric_equality_check(
    lhs: &Expr,
    rhs: &Expr,
    k: &str,
    points: usize,
    seed: u64,
) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut syms = lhs.free_symbols();
    syms.extend(rhs.free_symbols());
    let mut collected = 0usize;
    let mut evidence = Vec::new();
    for _attempt in 0..(points * 30) {
        let mut env = BTreeMap::new();
        for s in &syms {
            let lo = if s == k { -6 } else { 2 };
            env.insert(s.clone(), rat_int(rng.gen_range(lo..=12)));
        }
        let lv = eval(lhs, &env);
        let rv = eval(rhs, &env);
        match (lv, rv) {
            (Value(l), Value(r)) => {
                collected += 1;
                if l != r {
                    evidence.push(Evidence {
                        assignment: env
                            .iter()
                            .map(|(s, v)| (s.clone(), fmt_rat(v)))
                            .collect(),
                        lhs: l.display(),
                        rhs: r.display(),
                    });
                    return CheckReport {
                        verdict: Verdict::Fail,
                        evidence,
                        seed,
                    };
                }
                if collected >= points {
                    return CheckReport {
                        verdict: Verdict::Pass,
                        evidence,
                        seed,
                    };
                }
            }
            _ => continue, // pole or non-numeric: skip the point
        }
    }
    CheckReport {
        verdict: if collected > 0 {
            Verdict::Pass
        } else {
            Verdict::SkippedPole
        },
        evidence,
        seed,
    }
}

// ---- recurrence check ----

/// Brute-force check of a recurrence against its summand: instantiate the
/// parameters, sum over the natural support, and verify
/// sum_j coeff_j(n) s(n-j) = 0 exactly for a window of n values.
pub fn check_recurrence(
    rec: &Recurrence,
    f: &Expr,
    k: &str,
    n: &str,
    trials: usize,
) -> Result<CheckReport> {
    let rec = to_direction(rec, RecDirection::Down);
    let order = rec.order as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut params = f.free_symbols();
    params.remove(k);
    params.remove(n);
    let mut evidence = Vec::new();
    let mut done_trials = 0usize;
    let mut attempts = 0usize;
    while done_trials < trials {
        attempts += 1;
        if attempts > 300 {
            return Ok(CheckReport {
                verdict: if done_trials > 0 {
                    Verdict::Pass
                } else {
                    Verdict::SkippedPole
                },
                evidence,
                seed: DEFAULT_SEED,
            });
        }
        let mut env = BTreeMap::new();
        for p in &params {
            env.insert(p.clone(), rat_int(rng.gen_range(2..=9)));
        }
        // the leading coefficient must not vanish anywhere in the window
        let window: Vec<i64> = (order..=order + 6).collect();
        let lead = rec.coefficients.last().expect("order >= 1");
        let mut degenerate = false;
        for &m in &window {
            let mut full = env.clone();
            full.insert(n.to_string(), rat_int(m));
            if poly_eval_is_zero(lead, &full) {
                degenerate = true;
                break;
            }
        }
        if degenerate {
            continue;
        }
        // brute-force sums s(0)..s(order+6)
        let mut s_values: BTreeMap<i64, QG> = BTreeMap::new();
        let mut trial_ok = true;
        for m in 0..=(order + 6) {
            let mut full = env.clone();
            full.insert(n.to_string(), rat_int(m));
            match support_sum(f, k, &full)? {
                Some(v) => {
                    s_values.insert(m, v);
                }
                None => {
                    trial_ok = false;
                    break;
                }
            }
        }
        if !trial_ok {
            continue;
        }
        for &m in &window {
            let mut full = env.clone();
            full.insert(n.to_string(), rat_int(m));
            let mut lhs = QG::zero();
            let mut ok = true;
            for (i, c) in rec.coefficients.iter().enumerate() {
                let shift = rec.shifts()[i];
                let cv = match c.eval(&full) {
                    Some(v) => v,
                    None => {
                        ok = false;
                        break;
                    }
                };
                let sv = &s_values[&(m + shift)];
                match lhs.add(&sv.mul(&QG::from_rat(cv))) {
                    Some(next) => lhs = next,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                trial_ok = false;
                break;
            }
            if !lhs.is_zero() {
                evidence.push(Evidence {
                    assignment: env
                        .iter()
                        .map(|(s, v)| (s.clone(), fmt_rat(v)))
                        .chain(std::iter::once((n.to_string(), m.to_string())))
                        .collect(),
                    lhs: lhs.display(),
                    rhs: "0".to_string(),
                });
                return Ok(CheckReport {
                    verdict: Verdict::Fail,
                    evidence,
                    seed: DEFAULT_SEED,
                });
            }
        }
        if trial_ok {
            evidence.push(Evidence {
                assignment: env
                    .iter()
                    .map(|(s, v)| (s.clone(), fmt_rat(v)))
                    .collect(),
                lhs: "0".to_string(),
                rhs: "0".to_string(),
            });
            done_trials += 1;
        }
    }
    Ok(CheckReport {
        verdict: Verdict::Pass,
        evidence,
        seed: DEFAULT_SEED,
    })
}


fn poly_eval_is_zero(p: &crate::field::Polynomial, env: &BTreeMap<String, Rat>) -> bool {
    p.eval(env).map(|v| v.is_zero()).unwrap_or(false)
}

/// Sum the instantiated term over its natural support in k.
///
/// Scans k in [-SUPPORT_SCAN, SUPPORT_SCAN] and requires ZERO_FLANK
/// consecutive zero (or 0/0) terms on each flank of the nonzero region;
/// `Err(UnboundedSupport)` when a nonzero term touches the scan boundary,
/// `Ok(None)` when a genuine pole or non-numeric value makes the trial
/// unusable.
fn support_sum(f: &Expr, k: &str, env: &BTreeMap<String, Rat>) -> Result<Option<QG>> {
    let mut acc = QG::zero();
    let mut last_nonzero: Option<i64> = None;
    let mut first_nonzero: Option<i64> = None;
    let mut env2 = env.clone();
    for i in -SUPPORT_SCAN..=SUPPORT_SCAN {
        env2.insert(k.to_string(), rat_int(i));
        match eval(f, &env2) {
            Value(v) => {
                if !v.is_zero() {
                    first_nonzero.get_or_insert(i);
                    last_nonzero = Some(i);
                    match acc.add(&v) {
                        Some(next) => acc = next,
                        None => return Ok(None),
                    }
                }
            }
            ZeroOverZero => {} // vanished term of a terminated series
            Pole => return Ok(None),
            NonNumeric => return Ok(None),
        }
    }
    if let (Some(lo), Some(hi)) = (first_nonzero, last_nonzero) {
        if lo < -SUPPORT_SCAN + ZERO_FLANK as i64 || hi > SUPPORT_SCAN - ZERO_FLANK as i64 {
            return Err(Error::UnboundedSupport);
        }
    }
    Ok(Some(acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    #[test]
    fn eval_basics() {
        let env = BTreeMap::new();
        assert_eq!(
            eval(&parse("factorial(5)").unwrap(), &env),
            Value(QG::from_rat(rat_int(120)))
        );
        assert_eq!(eval(&parse("1/0").unwrap(), &env), Pole);
        // half-integer factorial: factorial(1/2) = gamma(3/2) = (1/2) gamma(1/2)
        match eval(&parse("factorial(1/2)").unwrap(), &env) {
            Value(v) => {
                assert_eq!(v.gexp, 1);
                assert_eq!(v.rat, crate::field::rat_frac(1, 2));
            }
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn eval_reciprocal_gamma_pole_is_zero() {
        // 1/factorial(-3) = 0 formally
        let env = BTreeMap::new();
        assert_eq!(
            eval(&parse("1/factorial(-3)").unwrap(), &env),
            Value(QG::zero())
        );
    }

    #[test]
    fn finite_sum_values() {
        // sum_{k=0}^{0} binomial(0,k)^3 = 1
        let f = parse("sub(n=0, binomial(n,k)^3)").unwrap();
        let s = finite_sum(&f, "k", 0, 0).unwrap();
        assert_eq!(s, Expr::one());
        // sum_{k=0}^{1} binomial(1,k)^2 binomial(2k,1) = 2
        let f = parse("sub(n=1, binomial(n,k)^2*binomial(2*k,n))").unwrap();
        let s = finite_sum(&f, "k", 0, 1).unwrap();
        assert_eq!(s, Expr::int(2));
    }

    #[test]
    fn finite_sum_empty_support_is_zero() {
        // binomial(2,k) vanishes for k in 5..7
        let f = parse("binomial(2,k)").unwrap();
        let s = finite_sum(&f, "k", 5, 7).unwrap();
        assert_eq!(s, Expr::zero());
    }

    #[test]
    fn finite_sum_pole_detected() {
        let f = parse("1/(k - 3)").unwrap();
        assert!(matches!(
            finite_sum(&f, "k", 0, 5),
            Err(Error::PoleAtPoint(_))
        ));
    }

    #[test]
    fn finite_sum_accumulation_orders_agree() {
        let f = parse("binomial(7,k)*k + 1/(k+9)").unwrap();
        let a = finite_sum(&f, "k", 0, 7).unwrap();
        let b = finite_sum_pairwise(&f, "k", 0, 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn antidifference_pass_and_fail() {
        // g = k, a = 1: pass
        let r = check_antidifference(
            &parse("k").unwrap(),
            &Expr::one(),
            "k",
            Direction::Down,
        );
        assert_eq!(r.verdict, Verdict::Pass);
        // g = k^2, a = 1: fail
        let r = check_antidifference(
            &parse("k^2").unwrap(),
            &Expr::one(),
            "k",
            Direction::Down,
        );
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(!r.evidence.is_empty());
    }

    #[test]
    fn recurrence_check_binomial() {
        let f = parse("binomial(n,k)").unwrap();
        let rec = crate::zeilberger::sumrecursion(&f, "k", "n", None).unwrap();
        let report = check_recurrence(&rec, &f, "k", "n", 3).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
    }

    #[test]
    fn corrupted_recurrence_fails() {
        let f = parse("binomial(n,k)").unwrap();
        // wrong: sum(n-1) - sum(n)
        let rec = Recurrence::new(
            "n",
            RecDirection::Down,
            vec![
                crate::field::Polynomial::one(),
                crate::field::Polynomial::from_int(-1),
            ],
        )
        .unwrap();
        let report = check_recurrence(&rec, &f, "k", "n", 2).unwrap();
        assert_eq!(report.verdict, Verdict::Fail);
    }

    #[test]
    fn unbounded_support_detected() {
        // constant summand never vanishes
        let f = parse("1").unwrap();
        let rec = Recurrence::new(
            "n",
            RecDirection::Down,
            vec![
                crate::field::Polynomial::one(),
                crate::field::Polynomial::from_int(-1),
            ],
        )
        .unwrap();
        assert!(matches!(
            check_recurrence(&rec, &f, "k", "n", 1),
            Err(Error::UnboundedSupport)
        ));
    }
}
