use super::{is_prime, Monomial, Poly};
use crate::error::{Error, Result};

/// Parses an integer-coefficient expression in x, y, z and reduces it
/// modulo `p^level`.
///
/// Grammar: `expr := term (('+'|'-') term)*`, `term := factor ('*' factor)*`,
/// `factor := base ('^' nat)?`, `base := nat | var | '(' expr ')'`.
/// A leading minus sign on an expression is also accepted.
pub fn parse_poly(text: &str, p: u64, level: u32) -> Result<Poly> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if level == 0 || level > 2 {
        return Err(Error::InvalidInput(format!("coefficient level {level} is not 1 or 2")));
    }
    let mut parser = Parser { src: text.as_bytes(), pos: 0, p, level };
    let out = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.syntax("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    p: u64,
    level: u32,
}

impl Parser<'_> {
    fn syntax(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
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

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = if self.peek() == Some(b'-') {
            self.pos += 1;
            self.term()?.neg()
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                self.pos = start;
                return Err(self.syntax("expected exponent"));
            }
            let e: u32 = digits.parse().map_err(|_| Error::ExponentOverflow)?;
            return base.pow(e as u64);
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn base(&mut self) -> Result<Poly> {
        match self.peek() {
            None => Err(self.syntax("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.syntax("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let md = self.p.pow(self.level);
                let value = self.digits().bytes().fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % md);
                Ok(Poly::constant(self.p, self.level, value as i64))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let idx = match c {
                    b'x' => 0,
                    b'y' => 1,
                    b'z' => 2,
                    _ => return Err(Error::UnknownVariable { pos: self.pos, name: c as char }),
                };
                self.pos += 1;
                Ok(Poly::term(self.p, self.level, Monomial::var(idx), 1))
            }
            Some(_) => Err(self.syntax("expected number, variable or '('")),
        }
    }
}
