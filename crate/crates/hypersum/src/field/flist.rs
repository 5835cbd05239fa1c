//! Products of polynomial factors with signed multiplicities.
//!
//! Term ratios of gamma products arrive naturally factored into low-degree
//! pieces; keeping that structure makes the normal-form decomposition cheap
//! (dispersions and gcds act on factor pairs instead of expanded
//! polynomials).

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::field::poly::{poly_gcd, Polynomial, Rat};
use crate::field::ratfun::RationalFunction;

/// coeff * prod factors[i].0 ^ factors[i].1 with primitive, positive-leading,
/// nonconstant factors. A zero coefficient encodes the zero function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorProduct {
    coeff: Rat,
    factors: Vec<(Polynomial, i64)>,
}

impl FactorProduct {
    pub fn one() -> Self {
        FactorProduct {
            coeff: Rat::one(),
            factors: Vec::new(),
        }
    }

    pub fn zero() -> Self {
        FactorProduct {
            coeff: Rat::zero(),
            factors: Vec::new(),
        }
    }

    pub fn from_rat(c: Rat) -> Self {
        FactorProduct {
            coeff: c,
            factors: Vec::new(),
        }
    }

    pub fn from_poly(p: &Polynomial) -> Self {
        let mut f = Self::one();
        f.mul_poly(p, 1);
        f
    }

    pub fn from_ratfun(r: &RationalFunction) -> Self {
        let mut f = Self::one();
        f.mul_poly(r.num(), 1);
        if !r.den().is_one() {
            f.mul_poly(r.den(), -1);
        }
        f
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn coeff(&self) -> &Rat {
        &self.coeff
    }

    pub fn factors(&self) -> &[(Polynomial, i64)] {
        &self.factors
    }

    pub fn mul_rat(&mut self, c: &Rat) {
        self.coeff *= c;
        if self.coeff.is_zero() {
            self.factors.clear();
        }
    }

    /// Multiply by p^e; the content of p folds into the coefficient.
    pub fn mul_poly(&mut self, p: &Polynomial, e: i64) {
        if self.is_zero() || e == 0 {
            return;
        }
        if p.is_zero() {
            assert!(e > 0, "zero polynomial in a denominator");
            *self = Self::zero();
            return;
        }
        let (c, prim) = p.primitive_signed();
        self.coeff *= pow_rat(&c, e);
        if prim.is_one() {
            return;
        }
        for (q, m) in self.factors.iter_mut() {
            if *q == prim {
                *m += e;
                if *m == 0 {
                    let q = q.clone();
                    self.factors.retain(|(f, _)| f != &q);
                }
                return;
            }
        }
        self.factors.push((prim, e));
    }

    pub fn mul(&mut self, other: &FactorProduct) {
        self.coeff *= &other.coeff;
        if self.coeff.is_zero() {
            self.factors.clear();
            return;
        }
        for (p, e) in &other.factors {
            self.mul_poly(p, *e);
        }
    }

    pub fn invert(&self) -> Result<FactorProduct> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(FactorProduct {
            coeff: self.coeff.recip(),
            factors: self.factors.iter().map(|(p, e)| (p.clone(), -e)).collect(),
        })
    }

    pub fn pow_i64(&self, e: i64) -> Result<FactorProduct> {
        if e == 0 {
            return Ok(Self::one());
        }
        if self.is_zero() {
            if e < 0 {
                return Err(Error::DivisionByZero);
            }
            return Ok(Self::zero());
        }
        Ok(FactorProduct {
            coeff: pow_rat(&self.coeff, e),
            factors: self
                .factors
                .iter()
                .map(|(p, m)| (p.clone(), m * e))
                .collect(),
        })
    }

    /// Cancel common factors between numerator and denominator entries,
    /// splitting factors when their gcd is proper.
    pub fn reduce(&mut self) {
        if self.is_zero() {
            return;
        }
        let mut guard = 0usize;
        loop {
            guard += 1;
            assert!(guard < 10_000, "factor reduction did not converge");
            let mut split: Option<(usize, usize, Polynomial)> = None;
            'outer: for i in 0..self.factors.len() {
                if self.factors[i].1 <= 0 {
                    continue;
                }
                for j in 0..self.factors.len() {
                    if self.factors[j].1 >= 0 {
                        continue;
                    }
                    let g = poly_gcd(&self.factors[i].0, &self.factors[j].0);
                    if g.as_constant().is_none() {
                        split = Some((i, j, g));
                        break 'outer;
                    }
                }
            }
            let (i, j, g) = match split {
                Some(s) => s,
                None => break,
            };
            let (pi, ei) = self.factors[i].clone();
            let (pj, ej) = self.factors[j].clone();
            // remove the two entries (larger index first)
            let (a, b) = if i > j { (i, j) } else { (j, i) };
            self.factors.remove(a);
            self.factors.remove(b);
            let qi = pi.exact_div(&g).expect("gcd divides");
            let qj = pj.exact_div(&g).expect("gcd divides");
            self.mul_poly(&qi, ei);
            self.mul_poly(&qj, ej);
            self.mul_poly(&g, ei + ej);
        }
        self.factors.sort_by(|a, b| {
            a.0.total_degree()
                .cmp(&b.0.total_degree())
                .then_with(|| a.0.num_terms().cmp(&b.0.num_terms()))
                .then_with(|| format!("{}", a.0).cmp(&format!("{}", b.0)))
        });
    }

    /// Expanded numerator (positive exponents, with the coefficient).
    pub fn numerator(&self) -> Polynomial {
        let mut acc = Polynomial::constant(self.coeff.numer_as_rat());
        for (p, e) in &self.factors {
            if *e > 0 {
                acc = acc.mul(&p.pow(*e as u32));
            }
        }
        acc
    }

    /// Expanded denominator (negated exponents).
    pub fn denominator(&self) -> Polynomial {
        let mut acc = Polynomial::constant(self.coeff.denom_as_rat());
        for (p, e) in &self.factors {
            if *e < 0 {
                acc = acc.mul(&p.pow((-*e) as u32));
            }
        }
        acc
    }

    pub fn to_ratfun(&self) -> RationalFunction {
        if self.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction::new(self.numerator(), self.denominator())
    }

    pub fn substitute_var(&self, var: &str, value: &Polynomial) -> FactorProduct {
        let mut out = Self::from_rat(self.coeff.clone());
        for (p, e) in &self.factors {
            out.mul_poly(&p.substitute(var, value), *e);
        }
        out
    }

    pub fn shift_int(&self, var: &str, delta: i64) -> FactorProduct {
        let value = Polynomial::var(var).add(&Polynomial::from_int(delta));
        self.substitute_var(var, &value)
    }

    pub fn contains_var(&self, var: &str) -> bool {
        self.factors.iter().any(|(p, _)| p.contains_var(var))
    }
}

trait RatParts {
    fn numer_as_rat(&self) -> Rat;
    fn denom_as_rat(&self) -> Rat;
}

impl RatParts for Rat {
    fn numer_as_rat(&self) -> Rat {
        Rat::from_integer(self.numer().clone())
    }
    fn denom_as_rat(&self) -> Rat {
        Rat::from_integer(self.denom().clone())
    }
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::poly::rat_int;

    #[test]
    fn reduce_cancels_common_factors() {
        let k = Polynomial::var("k");
        let mut f = FactorProduct::one();
        // (k^2 - 1) / (k - 1) -> k + 1
        f.mul_poly(&k.pow(2).sub(&Polynomial::one()), 1);
        f.mul_poly(&k.sub(&Polynomial::one()), -1);
        f.reduce();
        let r = f.to_ratfun();
        assert!(r.den().is_one());
        assert_eq!(r.num(), &k.add(&Polynomial::one()));
    }

    #[test]
    fn content_goes_to_coefficient() {
        let k = Polynomial::var("k");
        let mut f = FactorProduct::one();
        f.mul_poly(&k.scale(&rat_int(6)), 1); // 6k
        assert_eq!(f.coeff(), &rat_int(6));
        assert_eq!(f.factors().len(), 1);
    }

    #[test]
    fn ratfun_roundtrip() {
        let k = Polynomial::var("k");
        let n = Polynomial::var("n");
        let mut f = FactorProduct::one();
        f.mul_poly(&k.add(&n), 2);
        f.mul_poly(&k.sub(&n), -1);
        f.mul_rat(&rat_int(-3));
        let r = f.to_ratfun();
        let back = FactorProduct::from_ratfun(&r);
        assert_eq!(back.to_ratfun(), r);
    }
}
