//! Recursive-descent parser for the expression grammar.
//!
//! Grammar (ASCII): integers, `p/q` rationals, identifiers, `+ - * / ^`,
//! parentheses, calls `factorial(e)`, `gamma(e)`, `binomial(e,e)`,
//! `pochhammer(e,e)`, `prod(e, sym, e, e)`, `sub(sym=e, e)`, `sum(sym +- c)`.
//! `^` binds tighter than unary minus.

use num::BigInt;

use crate::error::{Error, Result};
use crate::expr::{Expr, Substitution};

pub fn parse(text: &str) -> Result<Expr> {
    let tokens = lex(text)?;
    let mut p = Parser { tokens, pos: 0 };
    let e = p.expr()?;
    match p.peek() {
        Token::End => Ok(e),
        _ => Err(p.err("unexpected trailing input")),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Equals,
    End,
}

fn lex(text: &str) -> Result<Vec<(Token, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((Token::Plus, i));
                i += 1;
            }
            '-' => {
                out.push((Token::Minus, i));
                i += 1;
            }
            '*' => {
                out.push((Token::Star, i));
                i += 1;
            }
            '/' => {
                out.push((Token::Slash, i));
                i += 1;
            }
            '^' => {
                out.push((Token::Caret, i));
                i += 1;
            }
            '(' => {
                out.push((Token::LParen, i));
                i += 1;
            }
            ')' => {
                out.push((Token::RParen, i));
                i += 1;
            }
            ',' => {
                out.push((Token::Comma, i));
                i += 1;
            }
            '=' => {
                out.push((Token::Equals, i));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((Token::Int(n), start));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((Token::Ident(text[start..i].to_string()), start));
            }
            _ => {
                return Err(Error::Syntax {
                    pos: i,
                    msg: format!("unexpected character '{}'", c),
                })
            }
        }
    }
    out.push((Token::End, bytes.len()));
    Ok(out)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    fn here(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].0.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.here(),
            msg: msg.to_string(),
        }
    }

    fn expect(&mut self, tok: Token, what: &str) -> Result<()> {
        if self.peek() == &tok {
            self.next();
            Ok(())
        } else {
            Err(self.err(what))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut terms = vec![self.term()?];
        loop {
            match self.peek() {
                Token::Plus => {
                    self.next();
                    terms.push(self.term()?);
                }
                Token::Minus => {
                    self.next();
                    terms.push(Expr::neg(self.term()?));
                }
                _ => break,
            }
        }
        Ok(Expr::add(terms))
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Token::Star => {
                    self.next();
                    acc = Expr::mul2(acc, self.unary()?);
                }
                Token::Slash => {
                    self.next();
                    acc = Expr::div2(acc, self.unary()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Token::Minus => {
                self.next();
                Ok(Expr::neg(self.unary()?))
            }
            Token::Plus => {
                self.next();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == &Token::Caret {
            self.next();
            // right-associative; the exponent may carry a sign
            let exp = match self.peek() {
                Token::Minus => {
                    self.next();
                    Expr::neg(self.power()?)
                }
                _ => self.power()?,
            };
            Ok(Expr::pow(base, exp))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.next() {
            Token::Int(n) => Ok(Expr::Integer(n)),
            Token::LParen => {
                let e = self.expr()?;
                self.expect(Token::RParen, "expected ')'")?;
                Ok(e)
            }
            Token::Ident(name) => {
                if self.peek() == &Token::LParen {
                    self.next();
                    self.call(&name)
                } else {
                    Ok(Expr::sym(&name))
                }
            }
            _ => Err(Error::Syntax {
                pos: self.tokens[self.pos.saturating_sub(1)].1,
                msg: "expected expression".to_string(),
            }),
        }
    }

    /// Parse a call after the opening parenthesis has been consumed.
    fn call(&mut self, name: &str) -> Result<Expr> {
        match name {
            "factorial" | "gamma" | "binomial" | "pochhammer" => {
                let args = self.args()?;
                let wanted = if name == "factorial" || name == "gamma" { 1 } else { 2 };
                if args.len() != wanted {
                    return Err(Error::Arity);
                }
                let mut it = args.into_iter();
                Ok(match name {
                    "factorial" => Expr::factorial(it.next().unwrap()),
                    "gamma" => Expr::gamma(it.next().unwrap()),
                    "binomial" => {
                        let t = it.next().unwrap();
                        Expr::binomial(t, it.next().unwrap())
                    }
                    _ => {
                        let a = it.next().unwrap();
                        Expr::pochhammer(a, it.next().unwrap())
                    }
                })
            }
            "prod" => {
                let body = self.expr()?;
                self.expect(Token::Comma, "expected ','")?;
                let idx = match self.next() {
                    Token::Ident(s) => s,
                    _ => return Err(self.err("expected index symbol")),
                };
                self.expect(Token::Comma, "expected ','")?;
                let lo = self.expr()?;
                self.expect(Token::Comma, "expected ','")?;
                let hi = self.expr()?;
                self.expect(Token::RParen, "expected ')'")?;
                if lo.contains_symbol(&idx) || hi.contains_symbol(&idx) {
                    return Err(self.err("prod index occurs in its own bounds"));
                }
                Ok(Expr::prod(body, &idx, lo, hi))
            }
            "sub" => {
                let target = match self.next() {
                    Token::Ident(s) => s,
                    _ => return Err(self.err("expected substitution target symbol")),
                };
                self.expect(Token::Equals, "expected '='")?;
                let replacement = self.expr()?;
                self.expect(Token::Comma, "expected ','")?;
                let body = self.expr()?;
                self.expect(Token::RParen, "expected ')'")?;
                let s = Substitution::new(&target, replacement)?;
                Ok(body.substitute(&s))
            }
            "sum" => {
                // sum(ident), sum(ident + c), sum(ident - c)
                let inner = self.expr()?;
                self.expect(Token::RParen, "expected ')'")?;
                match sum_shift(&inner) {
                    Some(shift) => Ok(Expr::sumref(shift)),
                    None => Err(self.err("sum(...) takes a symbol plus an integer shift")),
                }
            }
            _ => Err(self.err("unknown function")),
        }
    }

    fn args(&mut self) -> Result<Vec<Expr>> {
        let mut out = Vec::new();
        if self.peek() == &Token::RParen {
            self.next();
            return Ok(out);
        }
        loop {
            out.push(self.expr()?);
            match self.next() {
                Token::Comma => continue,
                Token::RParen => break,
                _ => {
                    return Err(Error::Syntax {
                        pos: self.tokens[self.pos.saturating_sub(1)].1,
                        msg: "expected ',' or ')'".to_string(),
                    })
                }
            }
        }
        Ok(out)
    }
}

/// Recognize `ident + c` as a recurrence shift token.
fn sum_shift(e: &Expr) -> Option<i64> {
    match e {
        Expr::Symbol(_) => Some(0),
        Expr::Add(ops) if ops.len() == 2 => {
            let (lit, sym): (&Expr, &Expr) = match (&ops[0], &ops[1]) {
                (Expr::Integer(_), s) => (&ops[0], s),
                (s, Expr::Integer(_)) => (&ops[1], s),
                _ => return None,
            };
            if matches!(sym, Expr::Symbol(_)) {
                lit.as_i64()
            } else {
                None
            }
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_binomial() {
        let e = parse("binomial(n,k)").unwrap();
        assert_eq!(
            e,
            Expr::Binomial(Box::new(Expr::sym("n")), Box::new(Expr::sym("k")))
        );
    }

    #[test]
    fn arity_error() {
        assert_eq!(parse("binomial(n)"), Err(Error::Arity));
        assert_eq!(parse("factorial(n,k)"), Err(Error::Arity));
    }

    #[test]
    fn syntax_error_has_position() {
        match parse("1 + $") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected syntax error, got {:?}", other),
        }
    }

    #[test]
    fn precedence_and_unary_minus() {
        // -k^2 is -(k^2)
        let e = parse("-k^2").unwrap();
        assert_eq!(
            e,
            Expr::neg(Expr::pow(Expr::sym("k"), Expr::int(2)))
        );
        // 2^-3 folds
        assert_eq!(parse("2^-3").unwrap(), parse("1/8").unwrap());
    }

    #[test]
    fn rational_literal_reduces() {
        assert_eq!(parse("3/6").unwrap(), parse("1/2").unwrap());
    }

    #[test]
    fn sub_construct_substitutes() {
        let e = parse("sub(n=n+1, n^2)").unwrap();
        assert_eq!(e, parse("n^2 + 2*n + 1").unwrap());
    }

    #[test]
    fn sum_token() {
        assert_eq!(parse("sum(n - 1)").unwrap(), Expr::sumref(-1));
        assert_eq!(parse("sum(x)").unwrap(), Expr::sumref(0));
        assert!(parse("sum(2*n)").is_err());
    }

    #[test]
    fn prompt2_summand_parses() {
        let text = "(-1)^(k+1)*(4*k+1)*factorial(2*k)/(factorial(k)*4^k*(2*k-1)*factorial(k+1))";
        let e = parse(text).unwrap();
        assert!(e.contains_symbol("k"));
    }

    #[test]
    fn prod_index_in_bounds_rejected() {
        assert!(parse("prod(j, j, 1, j)").is_err());
    }
}
