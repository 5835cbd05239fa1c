//! Generalized hypergeometric front end: build pFq summands and derive their
//! recurrences.

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::trace::Trace;
use crate::zeilberger::{sumrecursion_with, Recurrence, SumOptions, SumRecursion};

/// Parameters of a generalized hypergeometric series pFq: upper parameters
/// a_1..a_p, lower parameters b_1..b_q, and the argument x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperSpec {
    upper: Vec<Expr>,
    lower: Vec<Expr>,
    argument: Expr,
}

impl HyperSpec {
    /// Lists may be empty; a nonpositive integer lower parameter makes the
    /// series undefined and is rejected.
    pub fn new(upper: Vec<Expr>, lower: Vec<Expr>, argument: Expr) -> Result<Self> {
        for b in &lower {
            if let Some(z) = b.as_integer() {
                if z <= &num::BigInt::from(0) {
                    return Err(Error::InvalidInput(format!(
                        "lower parameter {} is a nonpositive integer",
                        crate::expr::print(b)
                    )));
                }
            }
        }
        Ok(HyperSpec {
            upper,
            lower,
            argument,
        })
    }

    pub fn upper(&self) -> &[Expr] {
        &self.upper
    }

    pub fn lower(&self) -> &[Expr] {
        &self.lower
    }

    pub fn argument(&self) -> &Expr {
        &self.argument
    }
}

/// The series term
/// pochhammer(a_1,k)...pochhammer(a_p,k) x^k /
/// (pochhammer(b_1,k)...pochhammer(b_q,k) k!).
pub fn hyperterm(spec: &HyperSpec, k: &str) -> Expr {
    let kv = Expr::sym(k);
    let mut factors: Vec<Expr> = Vec::new();
    for a in &spec.upper {
        factors.push(Expr::pochhammer(a.clone(), kv.clone()));
    }
    for b in &spec.lower {
        factors.push(Expr::pow(
            Expr::pochhammer(b.clone(), kv.clone()),
            Expr::int(-1),
        ));
    }
    factors.push(Expr::pow(spec.argument.clone(), kv.clone()));
    factors.push(Expr::pow(Expr::factorial(kv), Expr::int(-1)));
    Expr::mul(factors)
}

/// Holonomic recurrence in `n` for the pFq sum; equal by construction to
/// `sumrecursion(hyperterm(spec, k), k, n, fixed_order)`.
pub fn hyperrecursion(
    spec: &HyperSpec,
    n: &str,
    fixed_order: Option<usize>,
) -> Result<Recurrence> {
    let opts = SumOptions {
        fixed_order,
        ..SumOptions::default()
    };
    Ok(hyperrecursion_with(spec, n, &opts, &mut Trace::off())?.recurrence)
}

pub fn hyperrecursion_with(
    spec: &HyperSpec,
    n: &str,
    opts: &SumOptions,
    trace: &mut Trace,
) -> Result<SumRecursion> {
    if spec.argument.contains_symbol(n) {
        return Err(Error::ZeilbergerNotApplicable);
    }
    let k = fresh_summation_var(spec, n);
    let term = hyperterm(spec, &k);
    sumrecursion_with(&term, &k, n, opts, trace)
}

fn fresh_summation_var(spec: &HyperSpec, n: &str) -> String {
    let mut used = std::collections::BTreeSet::new();
    for e in spec.upper.iter().chain(spec.lower.iter()) {
        used.extend(e.free_symbols());
    }
    used.extend(spec.argument.free_symbols());
    used.insert(n.to_string());
    for cand in ["k", "k1", "k2", "k3"] {
        if !used.contains(cand) {
            return cand.to_string();
        }
    }
    "k4".to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::simplify::{term_ratio, Direction};

    #[test]
    fn hyperterm_structure() {
        // 0F0(;;x) term is x^k/k!
        let spec = HyperSpec::new(vec![], vec![], Expr::sym("x")).unwrap();
        let t = hyperterm(&spec, "k");
        assert_eq!(t, parse("x^k/factorial(k)").unwrap());
    }

    #[test]
    fn hyperterm_ratio_property() {
        // ratio of the 2F1(a,b;c;x) term: (a+k-1)(b+k-1) x / ((c+k-1) k)
        let spec = HyperSpec::new(
            vec![Expr::sym("a"), Expr::sym("b")],
            vec![Expr::sym("c")],
            Expr::sym("x"),
        )
        .unwrap();
        let t = hyperterm(&spec, "k");
        let r = term_ratio(&t, "k", Direction::Down).unwrap();
        let expect = crate::expr::expr_to_ratfun(
            &parse("(a+k-1)*(b+k-1)*x/((c+k-1)*k)").unwrap(),
        )
        .unwrap();
        assert_eq!(r.ratio, expect);
    }

    #[test]
    fn trivial_cancellation() {
        // 1F1(1;1;x) term reduces to x^k/k! at the ratio level
        let spec = HyperSpec::new(vec![Expr::one()], vec![Expr::one()], Expr::sym("x"))
            .unwrap();
        let t = hyperterm(&spec, "k");
        let free = HyperSpec::new(vec![], vec![], Expr::sym("x")).unwrap();
        let t0 = hyperterm(&free, "k");
        let r1 = term_ratio(&t, "k", Direction::Down).unwrap();
        let r0 = term_ratio(&t0, "k", Direction::Down).unwrap();
        assert_eq!(r1.ratio, r0.ratio);
    }

    #[test]
    fn rejects_nonpositive_lower_parameter() {
        assert!(HyperSpec::new(vec![], vec![Expr::int(-2)], Expr::one()).is_err());
        assert!(HyperSpec::new(vec![], vec![Expr::int(0)], Expr::one()).is_err());
    }

    #[test]
    fn rejects_argument_depending_on_n() {
        let spec = HyperSpec::new(vec![Expr::sym("a")], vec![], Expr::sym("n")).unwrap();
        assert!(matches!(
            hyperrecursion(&spec, "n", None),
            Err(Error::ZeilbergerNotApplicable)
        ));
    }

    #[test]
    fn vandermonde_recurrence() {
        // 2F1(-n, b; c; 1): (n-1+c-b) sum(n-1) - (n-1+c) sum(n)
        let spec = HyperSpec::new(
            vec![Expr::neg(Expr::sym("n")), Expr::sym("b")],
            vec![Expr::sym("c")],
            Expr::one(),
        )
        .unwrap();
        let rec = hyperrecursion(&spec, "n", None).unwrap();
        assert_eq!(rec.order, 1);
        let term = hyperterm(&spec, "k");
        let rec2 = crate::zeilberger::sumrecursion(&term, "k", "n", None).unwrap();
        assert!(crate::zeilberger::recurrences_equal(&rec, &rec2));
    }
}
