//! Parser for integer-coefficient rational expressions in one variable.
//!
//! Accepts `+ - * / ^`, parentheses, integer literals and the variable name,
//! e.g. `6*(t^2-32)/(t*(t^2-64))`. The value is returned in reduced form.

use num_bigint::BigInt;
use num_traits::Zero;

use super::ratfunc::RationalFunction;
use crate::error::{Error, Result};
use crate::scalar::Field;

pub fn parse_rational_function(input: &str, var: &str) -> Result<RationalFunction> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
        var: var.as_bytes(),
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    var: &'a [u8],
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!(
            "{what} at offset {} in {:?}",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') if self.src.get(self.pos + 1) != Some(&b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    acc = acc.div_ref(&d);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        let caret = if self.eat(b'^') {
            true
        } else if self.peek() == Some(b'*') && self.src.get(self.pos + 1) == Some(&b'*') {
            self.pos += 2;
            true
        } else {
            false
        };
        if !caret {
            return Ok(base);
        }
        self.skip_ws();
        let e = self.uint()?;
        let e: u32 = e
            .try_into()
            .map_err(|_| self.err("exponent too large"))?;
        Ok(base.pow(e))
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(RationalFunction::from_integer(self.uint()?)),
            Some(_) if self.src[self.pos..].starts_with(self.var) => {
                let after = self.pos + self.var.len();
                let continues = self
                    .src
                    .get(after)
                    .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_');
                if continues {
                    return Err(self.err("unknown identifier"));
                }
                self.pos = after;
                Ok(RationalFunction::t())
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rf;

    #[test]
    fn precedence() {
        assert_eq!(rf("-t^2"), rf("0-t*t"));
        assert_eq!(rf("2*t**3"), rf("2*t*t*t"));
        assert_eq!(rf("1/2*t"), rf("t/2"));
    }

    #[test]
    fn custom_variable_name() {
        let r = parse_rational_function("x^2 - 1", "x").unwrap();
        assert_eq!(r, rf("t^2-1"));
        assert!(parse_rational_function("t", "x").is_err());
    }

    #[test]
    fn errors() {
        assert!(matches!("1/0".parse::<RationalFunction>(), Err(Error::DivisionByZero)));
        assert!(matches!("(t".parse::<RationalFunction>(), Err(Error::Parse(_))));
        assert!(matches!("tt".parse::<RationalFunction>(), Err(Error::Parse(_))));
    }
}
