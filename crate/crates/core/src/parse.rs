//! Recursive-descent parser for field-element expressions.
//!
//! Grammar: integers, `a/b`, generator names, `+ - * / ^` and parentheses.
//! Exponents are (possibly negative) integers.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTower};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = chars[start..i].iter().collect();
            out.push(Tok::Num(lit.parse().map_err(|_| Error::Parse(lit.clone()))?));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    tower: &'a FieldTower,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn constant(&self, c: FieldElement) -> Poly {
        Poly::constant(c, self.vars.len())
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let d = as_constant(&self.unary()?)
                    .ok_or_else(|| Error::Parse("division by a non-constant".into()))?;
                acc = acc.scale(&d.inv()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Poly> {
        if self.eat('-') {
            Ok(self.unary()?.neg())
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let e: i64 = match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                n.try_into()
                    .map_err(|_| Error::Parse("exponent too large".into()))?
            }
            _ => return Err(Error::Parse("expected integer exponent".into())),
        };
        let e = if neg { -e } else { e };
        match as_constant(&base) {
            Some(c) => Ok(self.constant(c.pow(e)?)),
            None if e >= 0 => Ok(base.pow(e as u32)),
            None => Err(Error::Parse("negative power of a non-constant".into())),
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(self.constant(self.tower.rational(BigRational::from_integer(n))))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(i) = self.vars.iter().position(|v| *v == name) {
                    Ok(Poly::var(self.tower, self.vars.len(), i))
                } else {
                    Ok(self.constant(self.tower.generator_by_name(&name)?))
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(v)
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

fn as_constant(p: &Poly) -> Option<FieldElement> {
    match p.terms().count() {
        0 => Some(p.tower().zero()),
        1 => {
            let (e, c) = p.terms().next().unwrap();
            e.iter().all(|k| *k == 0).then(|| c.clone())
        }
        _ => None,
    }
}

pub(crate) fn parse_poly(tower: &FieldTower, vars: &[&str], s: &str) -> Result<Poly> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        tower,
        vars,
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in '{s}'")));
    }
    Ok(v)
}

pub(crate) fn parse_element(tower: &FieldTower, s: &str) -> Result<FieldElement> {
    Ok(as_constant(&parse_poly(tower, &[], s)?).expect("no variables declared"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let q = FieldTower::rationals();
        assert_eq!(parse_element(&q, "1 + 2*3^2").unwrap(), q.int(19));
        assert_eq!(parse_element(&q, "-2^2").unwrap(), q.int(-4));
        assert_eq!(parse_element(&q, "(1/2)^-2").unwrap(), q.int(4));
        assert_eq!(parse_element(&q, "7/2/7").unwrap(), q.frac(1, 2));
    }

    #[test]
    fn polynomial_input() {
        let q = FieldTower::rationals();
        let p = parse_poly(&q, &["x", "y", "z"], "x^2 - 3/2*y*z").unwrap();
        let [x, y, z] = Poly::xyz(&q);
        assert_eq!(p, x.mul(&x).sub(&y.mul(&z).scale(&q.frac(3, 2))));
        assert!(parse_poly(&q, &["x"], "1/x").is_err());
    }

    #[test]
    fn rejects_garbage() {
        let q = FieldTower::rationals();
        assert!(parse_element(&q, "1 +").is_err());
        assert!(parse_element(&q, "x").is_err());
        assert!(parse_element(&q, "1 $ 2").is_err());
        assert!(parse_element(&q, "1/0").is_err());
    }
}
