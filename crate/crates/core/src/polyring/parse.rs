//! Parser for the polynomial text format.
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := integer ['/' integer] | name ['^' integer]
//! ```
//! Whitespace between tokens is ignored.

use num_bigint::BigInt;
use num_traits::One;

use super::field::Field;
use super::monomial::Monomial;
use super::poly::{PolyError, PolyRing, Polynomial, Term};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> PolyError {
        PolyError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse as BigInt"))
    }

    fn name(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii name")
    }
}

pub(crate) fn parse_poly<F: Field>(
    ring: &PolyRing<F>,
    s: &str,
) -> Result<Polynomial<F::Elem>, PolyError> {
    let fld = ring.field();
    let mut cur = Cursor {
        src: s.as_bytes(),
        pos: 0,
    };
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let negative = match cur.peek() {
            None if first => return Err(cur.err("empty polynomial")),
            None => break,
            Some(b'+') => {
                cur.pos += 1;
                false
            }
            Some(b'-') => {
                cur.pos += 1;
                true
            }
            Some(_) if first => false,
            Some(c) => return Err(cur.err(format!("expected `+` or `-`, found `{}`", c as char))),
        };
        first = false;
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        let mut mon = Monomial::one(ring.nvars());
        loop {
            match cur.peek() {
                Some(c) if c.is_ascii_digit() => {
                    num *= cur.integer()?;
                    if cur.peek() == Some(b'/') {
                        cur.pos += 1;
                        den *= cur.integer()?;
                    }
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let start = cur.pos;
                    let name = cur.name();
                    let idx = ring
                        .layout()
                        .lookup(name)
                        .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
                    let mut e: u32 = 1;
                    if cur.peek() == Some(b'^') {
                        cur.pos += 1;
                        let v = cur.integer()?;
                        e = u32::try_from(v).map_err(|_| cur.err("exponent too large"))?;
                    }
                    let new = mon.exp(idx) as u32 + e;
                    let new = u8::try_from(new).map_err(|_| PolyError::Parse {
                        pos: start,
                        msg: "exponent exceeds 255".into(),
                    })?;
                    mon = mon.with_exp(idx, new);
                }
                Some(c) => return Err(cur.err(format!("unexpected `{}`", c as char))),
                None => return Err(cur.err("unexpected end of input")),
            }
            if cur.peek() == Some(b'*') {
                cur.pos += 1;
            } else {
                break;
            }
        }
        if negative {
            num = -num;
        }
        terms.push(Term {
            coeff: fld.from_ratio(&num, &den)?,
            mon,
        });
    }
    Ok(ring.from_terms(terms))
}
