//! Polynomial expressions in `x` with exact rational literals.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*       divisor must be a nonzero constant
//! unary := ('-' | '+') unary | power
//! power := atom ('^' exponent)*             exponent: non-negative integer
//! atom  := digits | 'x' | '(' expr ')'
//! ```
//!
//! `^` binds tighter than unary minus, so `-x^2` is `-(x^2)`.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::exact::Rational;
use crate::series::XPolynomial;
use crate::{Error, Result};

const MAX_EXPONENT: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    X,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("ascii digits");
                out.push((start, Tok::Num(n)));
                continue;
            }
            b'x' | b'X' => Tok::X,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(syntax(i, format!("unexpected character {ch:?}")));
            }
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::PolySyntax { pos, msg: msg.into() }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn expr(&mut self) -> Result<XPolynomial> {
        let mut acc = self.term()?;
        while let Some(op @ (Tok::Plus | Tok::Minus)) = self.peek().cloned() {
            self.bump();
            let rhs = self.term()?;
            acc = if op == Tok::Plus { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<XPolynomial> {
        let mut acc = self.unary()?;
        while let Some(op @ (Tok::Star | Tok::Slash)) = self.peek().cloned() {
            self.bump();
            let pos = self.pos();
            let rhs = self.unary()?;
            acc = if op == Tok::Star {
                &acc * &rhs
            } else {
                match rhs.degree() {
                    Some(0) => acc.scale(&rhs.coeff(0).recip()),
                    None => return Err(syntax(pos, "division by zero")),
                    Some(_) => return Err(syntax(pos, "can only divide by a constant")),
                }
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<XPolynomial> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<XPolynomial> {
        let mut base = self.atom()?;
        while self.peek() == Some(&Tok::Caret) {
            self.bump();
            let pos = self.pos();
            let e = self.exponent(pos)?;
            base = (0..e).fold(XPolynomial::one(), |acc, _| &acc * &base);
        }
        Ok(base)
    }

    fn exponent(&mut self, pos: usize) -> Result<usize> {
        let value = match self.peek() {
            Some(Tok::Num(_)) | Some(Tok::LParen) => self.atom()?,
            _ => return Err(syntax(pos, "exponent must be a non-negative integer")),
        };
        let c = match value.degree() {
            None => Rational::zero(),
            Some(0) => value.coeff(0),
            Some(_) => return Err(syntax(pos, "exponent must be a non-negative integer")),
        };
        if !c.is_integer() {
            return Err(syntax(pos, "exponent must be a non-negative integer"));
        }
        match c.to_integer().to_usize() {
            Some(e) if e <= MAX_EXPONENT => Ok(e),
            _ => Err(syntax(pos, "exponent must be a non-negative integer")),
        }
    }

    fn atom(&mut self) -> Result<XPolynomial> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Num(n)) => Ok(XPolynomial::constant(Rational::from_integer(n))),
            Some(Tok::X) => Ok(XPolynomial::monomial(1)),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(syntax(self.toks.get(self.at - 1).map_or(self.end, |t| t.0), "expected ')'")),
                }
            }
            Some(_) => Err(syntax(pos, "expected a number, x or '('")),
            None => Err(syntax(pos, "unexpected end of input")),
        }
    }
}

/// Parses a polynomial expression into exact monomial coefficients.
pub fn parse_poly(text: &str) -> Result<XPolynomial> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, end: text.len() };
    let poly = p.expr()?;
    if p.at < p.toks.len() {
        return Err(syntax(p.pos(), "unexpected trailing input"));
    }
    Ok(poly)
}
