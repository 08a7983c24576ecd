//! Input grammar for field elements and polynomials in `x`.
//!
//! Terms are `c*x^k`, `x^k`, `x` or constants, joined by `+`/`-`;
//! coefficients are integers, fractions `a/b`, `t`-polynomials such as
//! `t^2+1`, or parenthesized ratios like `(t^2+1)/t`. Whitespace is
//! insignificant and everything is ASCII. Division is only defined by
//! nonzero constants and exponents must be non-negative integers.

use num_bigint::BigInt;

use crate::base_field::BaseField;
use crate::error::{Error, Result};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(char),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
    end: usize,
}

fn lex(text: &str) -> Result<Lexer> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' => {
                i += 1;
            }
            '+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            '/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            '^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits parse as integer");
                toks.push((start, Tok::Int(n)));
            }
            'a'..='z' | 'A'..='Z' => {
                toks.push((i, Tok::Var(c)));
                i += 1;
            }
            _ => {
                return Err(Error::Syntax {
                    position: i,
                    message: format!("unexpected character '{c}'"),
                })
            }
        }
    }
    Ok(Lexer { toks, end: bytes.len() })
}

struct Parser<'a> {
    base: &'a BaseField,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Syntax { position: self.here(), message: message.into() }
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := unary (('*'|'/') unary)*
    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    let at = self.here();
                    self.bump();
                    let rhs = self.unary()?;
                    if !rhs.is_constant() {
                        return Err(Error::Syntax {
                            position: at,
                            message: "division by a non-constant polynomial".into(),
                        });
                    }
                    if rhs.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    let inv = rhs.coeff(0).inv()?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    // unary := '-' unary | power
    fn unary(&mut self) -> Result<Poly> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    // power := atom ('^' uint)?
    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let at = self.here();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let e: u32 = n.try_into().map_err(|_| Error::Syntax {
                        position: at,
                        message: "exponent too large".into(),
                    })?;
                    return Ok(base.pow(e));
                }
                _ => {
                    return Err(Error::Syntax {
                        position: at,
                        message: "expected a non-negative integer exponent".into(),
                    })
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        let at = self.here();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Poly::constant(*self.base, self.base.from_bigint(&n))),
            Some(Tok::Var('x')) => Ok(Poly::x(*self.base)),
            Some(Tok::Var(v)) if Some(v) == self.base.var() => {
                Ok(Poly::constant(*self.base, self.base.t_elem()))
            }
            Some(Tok::Var(v)) => Err(Error::Syntax {
                position: at,
                message: format!("unknown symbol '{v}' over {}", self.base),
            }),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(Error::Syntax { position: at, message: "unclosed parenthesis".into() }),
                }
            }
            _ => Err(Error::Syntax { position: at, message: "expected a term".into() }),
        }
    }
}

pub(crate) fn parse_poly(base: &BaseField, text: &str) -> Result<Poly> {
    let lexer = lex(text)?;
    let mut parser = Parser { base, toks: lexer.toks, pos: 0, end: lexer.end };
    if parser.peek().is_none() {
        return Err(parser.err("empty input"));
    }
    let poly = parser.expr()?;
    if parser.peek().is_some() {
        return Err(parser.err("trailing input"));
    }
    Ok(poly)
}

pub(crate) fn parse_field_elem(base: &BaseField, text: &str) -> Result<crate::base_field::FieldElem> {
    let poly = parse_poly(base, text)?;
    if !poly.is_constant() {
        return Err(Error::Syntax {
            position: 0,
            message: "expected a base-field element, found a polynomial in x".into(),
        });
    }
    Ok(poly.coeff(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_in_errors() {
        let base = BaseField::padic(2).unwrap();
        match Poly::parse(base, "x^2 + $") {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 6),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match Poly::parse(base, "x +") {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 3),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_t_over_rationals() {
        let base = BaseField::padic(2).unwrap();
        assert!(Poly::parse(base, "x^2 + t").is_err());
    }

    #[test]
    fn division_rules() {
        let base = BaseField::padic(2).unwrap();
        assert!(matches!(Poly::parse(base, "1/0"), Err(Error::DivisionByZero)));
        assert!(Poly::parse(base, "x/x").is_err());
        assert_eq!(Poly::parse(base, "x/2").unwrap(), Poly::parse(base, "1/2*x").unwrap());
    }

    #[test]
    fn whitespace_insignificant() {
        let base = BaseField::padic(3).unwrap();
        assert_eq!(
            Poly::parse(base, " x ^ 2 - 3 * x + 1 ").unwrap(),
            Poly::parse(base, "x^2-3*x+1").unwrap()
        );
    }

    #[test]
    fn parenthesized_coefficients() {
        let base = BaseField::rational_functions(2).unwrap();
        let f = Poly::parse(base, "(t+1)*x^2 + (t^2+1)/t*x + 1").unwrap();
        assert_eq!(f.degree(), Some(2));
        assert_eq!(f.coeff(2), base.parse_elem("t+1").unwrap());
        assert_eq!(f.coeff(1), base.parse_elem("(t^2+1)/t").unwrap());
    }
}
