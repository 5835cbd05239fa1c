//! Canonically reduced rational functions.
//!
//! Invariants: gcd(numerator, denominator) = 1 and the denominator is monic
//! under the global graded-lex monomial order. Constructing num/den and
//! den/num and multiplying them yields exactly 1.

use std::fmt;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::field::poly::{poly_gcd, Polynomial, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Reduce and normalize; panics on a zero denominator (callers check).
    pub fn new(num: Polynomial, den: Polynomial) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RationalFunction {
                num,
                den: Polynomial::one(),
            };
        }
        let g = poly_gcd(&num, &den);
        let mut num = num.exact_div(&g).expect("gcd divides");
        let mut den = den.exact_div(&g).expect("gcd divides");
        let lc = den.leading_coeff();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RationalFunction { num, den }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn from_rat(c: Rat) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        match (self.num.as_constant(), self.den.as_constant()) {
            (Some(n), Some(d)) => Some(n / d),
            _ => None,
        }
    }

    pub fn contains_var(&self, var: &str) -> bool {
        self.num.contains_var(var) || self.den.contains_var(var)
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::new(num, den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::new(self.num.mul(&other.den), self.den.mul(&other.num)))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one().div(self)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow_i64(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(RationalFunction::new(
                self.num.pow(e as u32),
                self.den.pow(e as u32),
            ))
        } else {
            if self.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(RationalFunction::new(
                self.den.pow((-e) as u32),
                self.num.pow((-e) as u32),
            ))
        }
    }

    pub fn substitute(&self, var: &str, value: &Polynomial) -> Self {
        Self::new(
            self.num.substitute(var, value),
            self.den.substitute(var, value),
        )
    }

    pub fn shift_int(&self, var: &str, offset: i64) -> Self {
        RationalFunction {
            num: self.num.shift_int(var, offset),
            den: self.den.shift_int(var, offset),
        }
    }

    /// The polynomial itself when the denominator is 1.
    pub fn to_poly(&self) -> Option<&Polynomial> {
        if self.is_poly() {
            Some(&self.num)
        } else {
            None
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::poly::rat_int;

    #[test]
    fn reduction_and_monic_denominator() {
        let k = Polynomial::var("k");
        // (k^2-1)/(2k-2) = (k+1)/2 after reduction and monic normalization
        let num = k.pow(2).sub(&Polynomial::one());
        let den = k.scale(&rat_int(2)).sub(&Polynomial::from_int(2));
        let r = RationalFunction::new(num, den);
        assert!(r.den().is_one());
        assert_eq!(
            r.num(),
            &k.add(&Polynomial::one()).scale(&rat_frac_half())
        );
    }

    fn rat_frac_half() -> Rat {
        crate::field::poly::rat_frac(1, 2)
    }

    #[test]
    fn inverse_product_is_one() {
        let k = Polynomial::var("k");
        let n = Polynomial::var("n");
        let a = RationalFunction::new(k.add(&n), k.mul(&n).add(&Polynomial::one()));
        let b = a.recip().unwrap();
        assert!(a.mul(&b).is_one());
    }
}
