//! Recursive-descent parser for rational expressions in chart coordinates.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" INT)?
//! atom   := INT | IDENT | "(" expr ")"
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Chart, Poly, Scalar};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
    End,
}

struct Lexer<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
}

impl<'a> Lexer<'a> {
    fn run(src: &'a str) -> Result<Vec<(Tok, usize)>> {
        let mut lx = Lexer { src, toks: Vec::new() };
        let bytes = src.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_ascii_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = lx.src[start..i].parse().expect("digits");
                lx.toks.push((Tok::Int(n), start));
            } else if c.is_ascii_alphabetic() {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                lx.toks.push((Tok::Ident(lx.src[start..i].to_string()), start));
            } else if "+-*/^()".contains(c) {
                lx.toks.push((Tok::Op(c), i));
                i += 1;
            } else {
                let ch = src[i..].chars().next().unwrap_or(c);
                return Err(Error::Parse { pos: i, msg: format!("unexpected character `{ch}`") });
            }
        }
        lx.toks.push((Tok::End, src.len()));
        Ok(lx.toks)
    }
}

struct Parser<'c> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    chart: &'c Chart,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Op('-') => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Op('/') => {
                    self.bump();
                    let pos = self.pos();
                    let rhs = self.unary()?;
                    acc = acc.checked_div(&rhs).map_err(|_| Error::Parse {
                        pos,
                        msg: "division by zero".into(),
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar> {
        if self.peek() == &Tok::Op('-') {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if self.peek() != &Tok::Op('^') {
            return Ok(base);
        }
        self.bump();
        match self.bump() {
            Tok::Int(n) => match u32::try_from(&n) {
                Ok(e) => Ok(base.pow(e)),
                Err(_) => {
                    self.at -= 1;
                    self.error("exponent too large")
                }
            },
            _ => {
                self.at -= 1;
                self.error("exponent must be a non-negative integer literal")
            }
        }
    }

    fn atom(&mut self) -> Result<Scalar> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Scalar::from_poly(Poly::constant(BigRational::from_integer(n))))
            }
            Tok::Ident(name) => match self.chart.index_of(&name) {
                Some(i) => {
                    self.bump();
                    Ok(Scalar::var(i))
                }
                None => self.error(format!("unknown identifier `{name}`")),
            },
            Tok::Op('(') => {
                self.bump();
                let inner = self.expr()?;
                if self.peek() != &Tok::Op(')') {
                    return self.error("expected `)`");
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => self.error("unexpected end of input"),
            Tok::Op(c) => self.error(format!("unexpected `{c}`")),
        }
    }
}

/// Parses an expression over the coordinates of `chart` into a reduced [`Scalar`].
pub fn parse_scalar(text: &str, chart: &Chart) -> Result<Scalar> {
    let toks = Lexer::run(text)?;
    let mut p = Parser { toks, at: 0, chart };
    let value = p.expr()?;
    if p.peek() != &Tok::End {
        return p.error("unexpected trailing input");
    }
    Ok(value)
}
