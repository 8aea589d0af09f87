//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' unary) | ('/' INT) | <juxtaposed power after INT>)*
//! unary  := '-' unary | power
//! power  := atom ('^' INT)?
//! atom   := INT | IDENT | '(' expr ')'
//! ```
//!
//! `pi` denotes the uniformizer when the coefficient ring has one. `3x` is
//! read as `3*x`. Division is only by integer literals that are units of
//! the coefficient ring.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use super::{PolyRing, Polynomial};
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ if c.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Int(text[start..i].parse().unwrap()), start));
                continue;
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                return Err(ParseError {
                    position: start,
                    message: format!("unexpected character `{c}`"),
                })
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a, R: Ring> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    ring: &'a PolyRing<R>,
}

impl<R: Ring> Parser<'_, R> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.offset(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Polynomial<R>, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<R>, ParseError> {
        let mut last_was_int = matches!(self.peek(), Tok::Int(_));
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    last_was_int = matches!(self.peek(), Tok::Int(_));
                    acc = &acc * &self.unary()?;
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.offset();
                    let Tok::Int(n) = self.bump() else {
                        return Err(ParseError {
                            position: at,
                            message: "expected an integer divisor".into(),
                        });
                    };
                    acc = self.divide(&acc, &n, at)?;
                    last_was_int = false;
                }
                Tok::Ident(_) if last_was_int => {
                    last_was_int = false;
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn divide(
        &self,
        f: &Polynomial<R>,
        n: &BigInt,
        at: usize,
    ) -> Result<Polynomial<R>, ParseError> {
        let k = self.ring.coeff_ring();
        let mut terms = Vec::with_capacity(f.num_terms());
        for (m, c) in f.terms() {
            match k.div_by_integer(c, n) {
                Some(q) => terms.push((m.clone(), q)),
                None => {
                    return Err(ParseError {
                        position: at,
                        message: format!("division by {n} leaves the coefficient ring"),
                    })
                }
            }
        }
        Ok(self.ring.from_terms(terms))
    }

    fn unary(&mut self) -> Result<Polynomial<R>, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial<R>, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        match self.bump() {
            Tok::Int(n) => match n.to_u32() {
                Some(e) => Ok(base.pow(e as u64)),
                None => Err(ParseError {
                    position: at,
                    message: format!("exponent {n} too large"),
                }),
            },
            _ => Err(ParseError {
                position: at,
                message: "expected a non-negative integer exponent".into(),
            }),
        }
    }

    fn atom(&mut self) -> Result<Polynomial<R>, ParseError> {
        let at = self.offset();
        match self.bump() {
            Tok::Int(n) => Ok(self.ring.constant(self.ring.coeff_ring().from_bigint(&n))),
            Tok::Ident(name) => {
                if let Some(i) = self.ring.var_index(&name) {
                    return Ok(self.ring.var(i).expect("index from ring"));
                }
                if name == "pi" {
                    return match self.ring.coeff_ring().uniformizer() {
                        Some(pi) => Ok(self.ring.constant(pi)),
                        None => Err(ParseError {
                            position: at,
                            message: "`pi` used over a coefficient ring without a uniformizer"
                                .into(),
                        }),
                    };
                }
                Err(ParseError {
                    position: at,
                    message: format!("unknown identifier `{name}`"),
                })
            }
            Tok::LParen => {
                let inner = self.expr()?;
                if self.bump() != Tok::RParen {
                    return Err(ParseError {
                        position: self.toks[self.pos.saturating_sub(1)].1,
                        message: "expected `)`".into(),
                    });
                }
                Ok(inner)
            }
            Tok::End => Err(ParseError {
                position: at,
                message: "unexpected end of input".into(),
            }),
            t => Err(ParseError {
                position: at,
                message: format!("unexpected token {t:?}"),
            }),
        }
    }
}

/// Parses `text` into a polynomial of `ring`.
pub fn parse_expression<R: Ring>(
    text: &str,
    ring: &PolyRing<R>,
) -> Result<Polynomial<R>, ParseError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
        ring,
    };
    let f = p.expr()?;
    if *p.peek() != Tok::End {
        return p.error("unexpected trailing input");
    }
    Ok(f)
}
