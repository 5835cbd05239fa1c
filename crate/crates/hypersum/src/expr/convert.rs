//! Conversions between expression trees and the polynomial kernel.
//!
//! `poly_to_expr`/`ratfun_to_expr` build display trees with terms in
//! descending monomial order; they print nicely and re-parse to canonically
//! equal expressions.

use num::One;

use crate::expr::Expr;
use crate::field::{Factored, Polynomial, Rat, RationalFunction};

/// Rational-function view of an expression built from literals, symbols,
/// +, *, and integer powers. None when other node kinds occur.
pub fn expr_to_ratfun(e: &Expr) -> Option<RationalFunction> {
    match e {
        Expr::Integer(n) => Some(RationalFunction::from_rat(Rat::from_integer(n.clone()))),
        Expr::Rational(r) => Some(RationalFunction::from_rat(r.clone())),
        Expr::Symbol(s) => Some(RationalFunction::from_poly(Polynomial::var(s))),
        Expr::Add(ops) => {
            let mut acc = RationalFunction::zero();
            for op in ops {
                acc = acc.add(&expr_to_ratfun(op)?);
            }
            Some(acc)
        }
        Expr::Mul(ops) => {
            let mut acc = RationalFunction::one();
            for op in ops {
                acc = acc.mul(&expr_to_ratfun(op)?);
            }
            Some(acc)
        }
        Expr::Pow(b, ex) => {
            let e_int = ex.as_i64()?;
            let base = expr_to_ratfun(b)?;
            base.pow_i64(e_int).ok()
        }
        _ => None,
    }
}

/// Display tree with monomials in descending graded-lex order.
pub fn poly_to_expr(p: &Polynomial) -> Expr {
    if p.is_zero() {
        return Expr::zero();
    }
    let mut terms: Vec<(Vec<(String, u32)>, Rat)> = p
        .iter_terms()
        .map(|(m, c)| (m, c.clone()))
        .collect();
    terms.reverse(); // iter_terms ascends; display descends
    let parts: Vec<Expr> = terms
        .into_iter()
        .map(|(mono, coeff)| {
            let mut factors: Vec<Expr> = Vec::new();
            if !coeff.is_one() || mono.is_empty() {
                factors.push(Expr::from_rat(coeff));
            }
            for (name, e) in mono {
                let v = Expr::sym(&name);
                if e == 1 {
                    factors.push(v);
                } else {
                    factors.push(Expr::Pow(Box::new(v), Box::new(Expr::int(e as i64))));
                }
            }
            if factors.len() == 1 {
                factors.into_iter().next().unwrap()
            } else {
                Expr::Mul(factors)
            }
        })
        .collect();
    if parts.len() == 1 {
        parts.into_iter().next().unwrap()
    } else {
        Expr::Add(parts)
    }
}

/// Display tree num/den.
pub fn ratfun_to_expr(r: &RationalFunction) -> Expr {
    let num = poly_to_expr(r.num());
    if r.den().is_one() {
        return num;
    }
    let den = poly_to_expr(r.den());
    Expr::Mul(vec![num, Expr::Pow(Box::new(den), Box::new(Expr::int(-1)))])
}

/// Display tree coeff * prod(factor^mult).
pub fn factored_to_expr(f: &Factored) -> Expr {
    let mut factors: Vec<Expr> = Vec::new();
    if !f.coeff.is_one() || f.factors.is_empty() {
        factors.push(Expr::from_rat(f.coeff.clone()));
    }
    for (p, e) in &f.factors {
        let base = poly_to_expr(p);
        let base = match base {
            Expr::Add(_) | Expr::Mul(_) => base,
            other => other,
        };
        if *e == 1 {
            factors.push(base);
        } else {
            factors.push(Expr::Pow(Box::new(base), Box::new(Expr::int(*e as i64))));
        }
    }
    if factors.len() == 1 {
        factors.into_iter().next().unwrap()
    } else {
        Expr::Mul(factors)
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, print};
    use crate::field::rat_int;

    #[test]
    fn poly_display_descending() {
        let k = Polynomial::var("k");
        let n = Polynomial::var("n");
        // k^2 - 2kn + n^2
        let p = k.pow(2).sub(&k.mul(&n).scale(&rat_int(2))).add(&n.pow(2));
        let e = poly_to_expr(&p);
        assert_eq!(print(&e), "k^2 - 2*k*n + n^2");
        // parses back to the same value
        let back = parse(&print(&e)).unwrap();
        assert_eq!(back, e.canonical());
    }

    #[test]
    fn expr_to_ratfun_roundtrip() {
        let e = parse("(k^2 - 1)/(k - 1)").unwrap();
        let r = expr_to_ratfun(&e).unwrap();
        // reduced to k + 1
        assert!(r.den().is_one());
        assert_eq!(print(&poly_to_expr(r.num())), "k + 1");
    }

    #[test]
    fn non_rational_returns_none() {
        let e = parse("factorial(k)").unwrap();
        assert!(expr_to_ratfun(&e).is_none());
    }
}
