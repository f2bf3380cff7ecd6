//! Recursive-descent parser for the strict polynomial grammar
//!
//! ```text
//! expr   := ['-'] term { ('+' | '-') term }
//! term   := factor { '*' factor }
//! factor := INT | VAR [ '^' INT ]
//! ```
//!
//! Multiplication is always explicit, whitespace is insignificant, and there
//! are no parentheses. Coefficient literals are reduced modulo `p` while
//! exponent literals are checked against [`MAX_EXPONENT`]. All errors carry
//! the byte offset of the offending token.

use std::sync::Arc;

use super::{Monomial, PolyRing, Polynomial, MAX_EXPONENT};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok<'a> {
    Int(&'a str),
    Ident(&'a str),
    Plus,
    Minus,
    Star,
    Caret,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok<'_>)>> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            b'-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            b'*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            b'^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                toks.push((start, Tok::Int(&src[start..i])));
            }
            b if b.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((start, Tok::Ident(&src[start..i])));
            }
            _ => {
                return Err(Error::Parse {
                    pos: i,
                    msg: format!("unexpected character `{}`", &src[i..].chars().next().unwrap()),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    ring: &'a Arc<PolyRing>,
    toks: Vec<(usize, Tok<'a>)>,
    i: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok<'a>> {
        self.toks.get(self.i).map(|(_, t)| t)
    }

    fn bump(&mut self) -> Option<(usize, Tok<'a>)> {
        let t = self.toks.get(self.i).cloned();
        if t.is_some() {
            self.i += 1;
        }
        t
    }

    /// Reduces a decimal literal modulo `p` digit by digit, so literals of
    /// any length are accepted as coefficients.
    fn coefficient(&self, digits: &str) -> u64 {
        let p = self.ring.characteristic();
        digits.bytes().fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p)
    }

    fn exponent(&self, pos: usize, digits: &str) -> Result<u32> {
        let mut v: u64 = 0;
        for d in digits.bytes() {
            v = v * 10 + (d - b'0') as u64;
            if v > MAX_EXPONENT as u64 {
                return Err(Error::ExponentOverflow {
                    detail: format!(
                        "literal `{digits}` at byte {pos} exceeds the cap {MAX_EXPONENT}"
                    ),
                });
            }
        }
        Ok(v as u32)
    }

    /// term := factor { '*' factor }
    fn term(&mut self) -> Result<(Monomial, u64)> {
        let p = self.ring.characteristic();
        let field = *self.ring.field();
        let mut coeff: u64 = 1;
        let mut exps = vec![0u64; self.ring.nvars()];
        loop {
            match self.bump() {
                Some((_, Tok::Int(digits))) => {
                    coeff = field.mul(coeff, self.coefficient(digits) % p);
                }
                Some((pos, Tok::Ident(name))) => {
                    let vi = self.ring.variable_index(name).ok_or(Error::UnknownVariable {
                        pos,
                        name: name.to_string(),
                    })?;
                    let mut e: u32 = 1;
                    if self.peek() == Some(&Tok::Caret) {
                        self.bump();
                        match self.bump() {
                            Some((pos, Tok::Int(digits))) => e = self.exponent(pos, digits)?,
                            other => {
                                let pos = other.map(|(p, _)| p).unwrap_or(self.end);
                                return Err(Error::Parse {
                                    pos,
                                    msg: "expected an integer exponent after `^`".into(),
                                });
                            }
                        }
                    }
                    exps[vi] += e as u64;
                    if exps[vi] > MAX_EXPONENT as u64 {
                        return Err(Error::ExponentOverflow {
                            detail: format!(
                                "variable `{name}` accumulates exponent {} past the cap {MAX_EXPONENT}",
                                exps[vi]
                            ),
                        });
                    }
                }
                other => {
                    let pos = other.map(|(p, _)| p).unwrap_or(self.end);
                    return Err(Error::Parse {
                        pos,
                        msg: "expected an integer or a variable".into(),
                    });
                }
            }
            if self.peek() == Some(&Tok::Star) {
                self.bump();
            } else {
                break;
            }
        }
        let exps: Vec<u32> = exps.into_iter().map(|e| e as u32).collect();
        Ok((Monomial::from_exponents(exps)?, coeff))
    }
}

pub(super) fn parse_polynomial(ring: &Arc<PolyRing>, src: &str) -> Result<Polynomial> {
    let toks = lex(src)?;
    let mut parser = Parser { ring, toks, i: 0, end: src.len() };
    if parser.peek().is_none() {
        return Err(Error::Parse { pos: 0, msg: "expected a term".into() });
    }
    let field = *ring.field();
    let mut terms: Vec<(Monomial, u64)> = Vec::new();
    let mut negate = false;
    if parser.peek() == Some(&Tok::Minus) {
        parser.bump();
        negate = true;
    }
    loop {
        let (m, c) = parser.term()?;
        let c = if negate { field.neg(c) } else { c };
        terms.push((m, c));
        match parser.bump() {
            None => break,
            Some((_, Tok::Plus)) => negate = false,
            Some((_, Tok::Minus)) => negate = true,
            Some((pos, _)) => {
                return Err(Error::Parse {
                    pos,
                    msg: "expected `+`, `-`, or end of input".into(),
                })
            }
        }
        if parser.peek().is_none() {
            return Err(Error::Parse { pos: parser.end, msg: "expected a term".into() });
        }
    }
    Ok(Polynomial::from_terms(ring, terms))
}
