//! Text syntax: `x^2 + y^2 - 1`, `3/2*x*y`, `2x`, `(x - 1)^2`, `1.1*x`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Poly, PolyError, Rational, Result};

/// Parses a rational literal: `7`, `-3/2`, `1.25`, `-0.1`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let err = |msg: &str| PolyError::Parse { pos: 0, msg: format!("{msg}: `{s}`") };
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest.trim_start()),
        None => (false, s.strip_prefix('+').unwrap_or(s).trim_start()),
    };
    let value = if let Some((n, d)) = body.split_once('/') {
        let n = parse_decimal(n.trim()).ok_or_else(|| err("bad numerator"))?;
        let d = parse_decimal(d.trim()).ok_or_else(|| err("bad denominator"))?;
        if d.is_zero() {
            return Err(err("zero denominator"));
        }
        n / d
    } else {
        parse_decimal(body).ok_or_else(|| err("bad number"))?
    };
    Ok(if neg { -value } else { value })
}

fn parse_decimal(s: &str) -> Option<Rational> {
    if s.is_empty() {
        return None;
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    let n: BigInt = digits.parse().ok()?;
    let d = num_traits::pow(BigInt::from(10), frac.len());
    Some(Rational::new(n, d))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: Vec<String>,
    fixed: bool,
}

#[derive(Clone)]
struct Expr {
    // Terms keyed by exponent vector over `Parser::vars` (grown on demand).
    terms: Vec<(Vec<u32>, Rational)>,
}

impl Expr {
    fn constant(c: Rational) -> Expr {
        Expr { terms: vec![(Vec::new(), c)] }
    }

    fn into_poly(self, vars: &Arc<Vec<String>>) -> Poly {
        let mut p = Poly::with_vars(vars.clone());
        for (mut m, c) in self.terms {
            m.resize(vars.len(), 0);
            p.add_term(m, c);
        }
        p
    }
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(PolyError::Parse { pos: self.pos, msg: msg.to_string() })
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

    fn poly_of(&self, e: Expr) -> Poly {
        e.into_poly(&Arc::new(self.vars.clone()))
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
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
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = &acc * &f;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let f = self.power()?;
                    match f.constant_value() {
                        Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                        _ => return self.err("division only by nonzero constants"),
                    }
                }
                Some(c) if c.is_ascii_alphanumeric() || c == b'(' || c == b'_' || c == b'.' => {
                    let f = self.power()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return self.err("expected integer exponent");
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .or_else(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            None => self.err("unexpected end of input"),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.')
                {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match parse_decimal(text) {
                    Some(c) => Ok(self.poly_of(Expr::constant(c))),
                    None => self.err("malformed number"),
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string();
                let idx = match self.vars.iter().position(|v| *v == name) {
                    Some(i) => i,
                    None if self.fixed => {
                        self.pos = start;
                        return Err(PolyError::UnknownVariable(name));
                    }
                    None => {
                        self.vars.push(name);
                        self.vars.len() - 1
                    }
                };
                let mut m = vec![0; self.vars.len()];
                m[idx] = 1;
                Ok(self.poly_of(Expr { terms: vec![(m, Rational::one())] }))
            }
            Some(_) => self.err("unexpected character"),
        }
    }
}

impl Poly {
    /// Parses with variables in order of first appearance.
    pub fn parse(text: &str) -> Result<Poly> {
        Self::parse_with(text, Vec::new(), false)
    }

    /// Parses over a fixed variable list; other identifiers are errors.
    pub fn parse_in<S: AsRef<str>>(text: &str, vars: &[S]) -> Result<Poly> {
        Self::parse_with(text, vars.iter().map(|s| s.as_ref().to_string()).collect(), true)
    }

    fn parse_with(text: &str, vars: Vec<String>, fixed: bool) -> Result<Poly> {
        let mut p = Parser { src: text.as_bytes(), pos: 0, vars, fixed };
        let e = p.expr()?;
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        let all = Arc::new(p.vars.clone());
        e.align_to(&all)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn literals() {
        assert_eq!(parse_rational("3/2").unwrap(), Rational::new(3.into(), 2.into()));
        assert_eq!(parse_rational("-0.1").unwrap(), Rational::new((-1).into(), 10.into()));
        assert_eq!(parse_rational("1.1").unwrap(), Rational::new(11.into(), 10.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn grammar() {
        let p = Poly::parse("x^2 + y^2 - 1").unwrap();
        assert_eq!(p.vars(), ["x", "y"]);
        assert_eq!(p.num_terms(), 3);
        assert_eq!(Poly::parse("3/2 x").unwrap(), Poly::parse("1.5*x").unwrap());
        assert_eq!(Poly::parse("2x y").unwrap(), Poly::parse("2*x*y").unwrap());
        assert_eq!(Poly::parse("(x-1)^2").unwrap(), Poly::parse("x^2 - 2*x + 1").unwrap());
        assert_eq!(Poly::parse("-x^2").unwrap().coeff(&[2]), rat(-1));
        assert_eq!(Poly::parse("x/2").unwrap(), Poly::parse("1/2*x").unwrap());
        assert!(Poly::parse("x +").is_err());
        assert!(Poly::parse("x )").is_err());
    }

    #[test]
    fn fixed_variables() {
        let p = Poly::parse_in("y - x", &["x", "y"]).unwrap();
        assert_eq!(p.vars(), ["x", "y"]);
        assert_eq!(
            Poly::parse_in("x + q", &["x", "y"]),
            Err(PolyError::UnknownVariable("q".into()))
        );
    }

    #[test]
    fn print_parse_round_trip() {
        let p = Poly::parse("7/3*x^3*y - 2*x*y^2 + 11/5 - y").unwrap();
        assert_eq!(Poly::parse_in(&p.to_string(), p.vars()).unwrap(), p);
    }
}
