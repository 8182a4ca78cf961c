use num_bigint::BigInt;

use super::BivarPoly;
use crate::error::{Error, Result};
use crate::field::FieldCtx;

/// Parses `expr := term (('+'|'-') term)*`, `term := factor ('*' factor)*`,
/// `factor := base ('^' natural)?`, `base := integer | x | y | '(' expr ')'`.
/// A leading sign in front of an expression is also accepted.
pub fn parse_poly(text: &str, ctx: &FieldCtx) -> Result<BivarPoly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ctx,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected '{}'", p.src[p.pos] as char)));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: &'a FieldCtx,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<BivarPoly> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BivarPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<BivarPoly> {
        let base = self.base()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        match self.peek() {
            Some(b'-') => Err(self.error("negative exponent")),
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let digits = self.digits();
                let e: u32 = digits.parse().map_err(|_| Error::Parse {
                    position: start,
                    message: format!("exponent {digits} is too large"),
                })?;
                Ok(base.pow(e))
            }
            _ => Err(self.error("expected a natural exponent")),
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn base(&mut self) -> Result<BivarPoly> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(BivarPoly::x(self.ctx))
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(BivarPoly::y(self.ctx))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n: BigInt = self.digits().parse().expect("ascii digits");
                Ok(BivarPoly::constant(self.ctx, self.ctx.from_bigint(&n)))
            }
            Some(c) => Err(self.error(format!("unexpected '{}'", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
