//! Parser for polynomial and rational-function expressions over `Z`.
//!
//! Grammar: integers, named variables, `+ - * ^`, parentheses, and one
//! optional top-level `/` separating numerator from denominator.

use num_bigint::BigInt;

use super::mpoly::{Integers, MPoly};
use crate::error::{Error, Result};

pub type ZPoly = MPoly<Integers>;

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
    vars: &'a [String],
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.i).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.i, String::from_utf8_lossy(self.s)))
    }

    fn expr(&mut self) -> Result<ZPoly> {
        let n = self.vars.len();
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.i += 1;
                self.term()?.neg()
            }
            Some(b'+') => {
                self.i += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.i += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.i += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        debug_assert_eq!(acc.nvars(), n);
        Ok(acc)
    }

    fn term(&mut self) -> Result<ZPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.i += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(c) if c == b'(' || c.is_ascii_alphabetic() => acc = acc.mul(&self.power()?),
                _ => break,
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<ZPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.i += 1;
            let start = self.i;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.i += 1;
            }
            let e: u64 = std::str::from_utf8(&self.s[start..self.i])
                .unwrap()
                .parse()
                .map_err(|_| self.err("expected exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ZPoly> {
        let n = self.vars.len();
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected )"));
                }
                self.i += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.i;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.i += 1;
                }
                let v: BigInt = std::str::from_utf8(&self.s[start..self.i]).unwrap().parse().unwrap();
                Ok(ZPoly::constant(&Integers, n, v))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.i;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_') {
                    self.i += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.i]).unwrap();
                let idx = self
                    .vars
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                Ok(ZPoly::var(&Integers, n, idx))
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

/// Parse a polynomial expression in the given variables.
pub fn parse_poly(s: &str, vars: &[String]) -> Result<ZPoly> {
    let clean: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { s: clean.as_bytes(), i: 0, vars };
    let e = p.expr()?;
    if p.i != clean.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Parse `num` or `num/den` at top level.
pub fn parse_fraction(s: &str, vars: &[String]) -> Result<(ZPoly, ZPoly)> {
    let clean: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut depth = 0i32;
    let mut split = None;
    for (i, c) in clean.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => {
                if split.is_some() {
                    return Err(Error::Parse(format!("more than one top-level / in {s:?}")));
                }
                split = Some(i);
            }
            _ => {}
        }
    }
    match split {
        None => Ok((parse_poly(&clean, vars)?, ZPoly::one(&Integers, vars.len()))),
        Some(i) => {
            let den = parse_poly(&clean[i + 1..], vars)?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok((parse_poly(&clean[..i], vars)?, den))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses() {
        let vars = vec!["t".to_string(), "x1".to_string()];
        let f = parse_poly("t^2 - 2*t*x1 + 3(x1+1)", &vars).unwrap();
        assert_eq!(f.eval(&[BigInt::from(2), BigInt::from(1)]), BigInt::from(4 - 4 + 6));
        let (n, d) = parse_fraction("(1+t)/(t^2)", &vars).unwrap();
        assert_eq!(n.num_terms(), 2);
        assert_eq!(d.total_degree(), 2);
        assert!(parse_poly("y", &vars).is_err());
        assert!(parse_fraction("1/0", &vars).is_err());
        assert_eq!(parse_poly("-3", &[]).unwrap().constant_term(), BigInt::from(-3));
    }
}
