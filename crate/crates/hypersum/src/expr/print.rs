//! Deterministic linear printer; output re-parses to a canonically equal
//! expression.
//!
//! Binary + and - are spaced, * / ^ are not, quotients render with a single
//! `/` and a parenthesized denominator when it is composite.

use num::{One, Signed};

use crate::expr::Expr;
use crate::field::Rat;

pub fn print(e: &Expr) -> String {
    print_add_level(e)
}

fn print_add_level(e: &Expr) -> String {
    match e {
        Expr::Add(ops) => {
            let mut out = String::new();
            for (i, op) in ops.iter().enumerate() {
                let (neg, body) = signed_term(op);
                if i == 0 {
                    if neg {
                        out.push('-');
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
        _ => {
            let (neg, body) = signed_term(e);
            if neg {
                format!("-{}", body)
            } else {
                body
            }
        }
    }
}

/// Split a term into its sign and the printed magnitude.
fn signed_term(e: &Expr) -> (bool, String) {
    match e {
        Expr::Integer(n) => (n.is_negative(), n.magnitude().to_string()),
        Expr::Rational(r) => (
            r.is_negative(),
            format!("{}/{}", r.numer().magnitude(), r.denom()),
        ),
        Expr::Mul(_) => print_product(e),
        _ => (false, print_factor(e)),
    }
}

/// Print a product, splitting negative integer exponents into a denominator.
/// Returns (overall sign, body without sign).
fn print_product(e: &Expr) -> (bool, String) {
    let ops: Vec<&Expr> = match e {
        Expr::Mul(ops) => ops.iter().collect(),
        other => vec![other],
    };
    let mut neg = false;
    let mut num_parts: Vec<String> = Vec::new();
    let mut den_parts: Vec<String> = Vec::new();
    let mut num_coeff: Option<String> = None;
    let mut den_coeff: Option<String> = None;
    for op in ops {
        match op {
            Expr::Integer(n) => {
                if n.is_negative() {
                    neg = !neg;
                }
                let m = n.magnitude();
                if !m.is_one() {
                    num_coeff = Some(m.to_string());
                }
            }
            Expr::Rational(r) => {
                if r.is_negative() {
                    neg = !neg;
                }
                let rn = r.numer().magnitude();
                if !rn.is_one() {
                    num_coeff = Some(rn.to_string());
                }
                den_coeff = Some(r.denom().to_string());
            }
            Expr::Pow(b, ex) => {
                if let Some(m) = neg_int_exponent(ex) {
                    if m.is_one_lit() {
                        den_parts.push(print_factor(b));
                    } else {
                        den_parts.push(print_pow(b, &m));
                    }
                } else {
                    num_parts.push(print_pow(b, ex));
                }
            }
            other => num_parts.push(print_factor(other)),
        }
    }
    let mut num = Vec::new();
    if let Some(c) = num_coeff {
        num.push(c);
    }
    num.extend(num_parts);
    let num_str = if num.is_empty() {
        "1".to_string()
    } else {
        num.join("*")
    };
    let mut den = Vec::new();
    if let Some(c) = den_coeff {
        den.push(c);
    }
    den.extend(den_parts);
    if den.is_empty() {
        return (neg, num_str);
    }
    let den_str = if den.len() == 1 {
        let single = &den[0];
        if needs_parens_as_denominator(single) {
            format!("({})", single)
        } else {
            single.clone()
        }
    } else {
        format!("({})", den.join("*"))
    };
    (neg, format!("{}/{}", num_str, den_str))
}

/// A single printed denominator needs parentheses when it contains an
/// operator at additive or multiplicative level.
fn needs_parens_as_denominator(s: &str) -> bool {
    let mut depth = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '*' | '/' if depth == 0 => return true,
            '-' if depth == 0 && i > 0 => return true,
            _ => {}
        }
    }
    false
}

/// Negated exponent magnitude when `ex` is a negative integer literal.
fn neg_int_exponent(ex: &Expr) -> Option<Expr> {
    match ex {
        Expr::Integer(n) if n.is_negative() => Some(Expr::Integer(-n.clone())),
        _ => None,
    }
}

fn print_pow(base: &Expr, exp: &Expr) -> String {
    let b = match base {
        Expr::Add(_) | Expr::Mul(_) | Expr::Pow(_, _) => {
            format!("({})", print_add_level(base))
        }
        Expr::Integer(n) if n.is_negative() => format!("({})", n),
        Expr::Rational(r) => format!("({})", rat_str(r)),
        _ => print_factor(base),
    };
    let e = match exp {
        Expr::Integer(n) if !n.is_negative() => n.to_string(),
        Expr::Symbol(s) => s.clone(),
        _ => format!("({})", print_add_level(exp)),
    };
    format!("{}^{}", b, e)
}

fn rat_str(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn print_factor(e: &Expr) -> String {
    match e {
        Expr::Integer(n) => {
            if n.is_negative() {
                format!("({})", n)
            } else {
                n.to_string()
            }
        }
        Expr::Rational(r) => rat_str(r),
        Expr::Symbol(s) => s.clone(),
        Expr::Add(_) => format!("({})", print_add_level(e)),
        Expr::Mul(_) => {
            let (neg, body) = print_product(e);
            if neg {
                format!("(-{})", body)
            } else {
                body
            }
        }
        Expr::Pow(b, ex) => {
            if let Some(m) = neg_int_exponent(ex) {
                let denom = if m.is_one_lit() {
                    print_factor(b)
                } else {
                    print_pow(b, &m)
                };
                if needs_parens_as_denominator(&denom) {
                    format!("1/({})", denom)
                } else {
                    format!("1/{}", denom)
                }
            } else {
                print_pow(b, ex)
            }
        }
        Expr::Factorial(a) => format!("factorial({})", print_add_level(a)),
        Expr::Gamma(a) => format!("gamma({})", print_add_level(a)),
        Expr::Binomial(t, b) => {
            format!("binomial({},{})", print_add_level(t), print_add_level(b))
        }
        Expr::Pochhammer(a, c) => {
            format!("pochhammer({},{})", print_add_level(a), print_add_level(c))
        }
        Expr::Prod(body, idx, lo, hi) => format!(
            "prod({},{},{},{})",
            print_add_level(body),
            idx,
            print_add_level(lo),
            print_add_level(hi)
        ),
        Expr::SumRef(shift) => {
            if *shift == 0 {
                "sum(n)".to_string()
            } else if *shift > 0 {
                format!("sum(n + {})", shift)
            } else {
                format!("sum(n - {})", -shift)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    #[test]
    fn prints_binomial() {
        let e = parse("binomial(n,k)").unwrap();
        assert_eq!(print(&e), "binomial(n,k)");
    }

    #[test]
    fn prints_recurrence_display_tree() {
        // 2*sum(n - 1) - sum(n), built in display order
        let e = Expr::Add(vec![
            Expr::Mul(vec![Expr::int(2), Expr::sumref(-1)]),
            Expr::Mul(vec![Expr::int(-1), Expr::sumref(0)]),
        ]);
        assert_eq!(print(&e), "2*sum(n - 1) - sum(n)");
    }

    #[test]
    fn reduced_rational() {
        let e = parse("3/6").unwrap();
        assert_eq!(print(&e), "1/2");
    }

    #[test]
    fn quotient_display() {
        let e = Expr::Mul(vec![
            Expr::Add(vec![Expr::sym("k"), Expr::int(1)]),
            Expr::Binomial(Box::new(Expr::sym("k")), Box::new(Expr::sym("n"))),
            Expr::Pow(
                Box::new(Expr::Add(vec![Expr::sym("n"), Expr::int(1)])),
                Box::new(Expr::int(-1)),
            ),
        ]);
        assert_eq!(print(&e), "(k + 1)*binomial(k,n)/(n + 1)");
    }

    #[test]
    fn roundtrip_samples() {
        for text in [
            "binomial(n,k)",
            "(-1)^k*factorial(2*k)/(4^k*factorial(k+1)*factorial(k))",
            "pochhammer(k - n,n)*k/(n + 1)",
            "prod(a + b*j + c*j^2,j,1,k)",
            "gamma(n + 1)/(gamma(k + 1)*gamma(n + 1 - k))",
            "1/(k^2 + 1)",
            "k^2 - 15*k + 8",
        ] {
            let e = parse(text).unwrap();
            let printed = print(&e);
            let back = parse(&printed).unwrap();
            assert_eq!(e, back, "round trip failed for {} -> {}", text, printed);
        }
    }
}
