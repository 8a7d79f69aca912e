//! Reader for the polynomial text grammar: sums of `c*V^e` terms, where
//! coefficients may be integers, generator symbols, or parenthesized
//! sub-expressions. Subtraction is accepted on input.

use super::field::{FieldElement, FiniteField};
use super::poly::{Poly, PolyRing};
use super::ring::Ring;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Int(u64),
    Sym(String),
    Neg(Box<Expr>),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
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

    fn expr(&mut self) -> Result<Expr> {
        let mut terms = Vec::new();
        let mut negate = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            negate = true;
        }
        loop {
            let t = self.term()?;
            terms.push(if negate { Expr::Neg(Box::new(t)) } else { t });
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    negate = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negate = true;
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::Sum(terms) })
    }

    fn term(&mut self) -> Result<Expr> {
        let mut factors = vec![self.factor()?];
        while self.peek() == Some(b'*') {
            self.pos += 1;
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { Expr::Product(factors) })
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            if self.src.get(self.pos) == Some(&b'-') {
                return self.err("negative exponents are not accepted");
            }
            let e = self.integer()?;
            let e = u32::try_from(e).or_else(|_| self.err("exponent too large"))?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().or_else(|_| self.err("integer out of range"))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Int(self.integer()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                Ok(Expr::Sym(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()))
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Evaluates an expression in `ring`, looking symbols up with `resolve`.
pub fn evaluate<R: Ring>(expr: &Expr, ring: &R, resolve: &dyn Fn(&str) -> Option<R::Elem>) -> Result<R::Elem> {
    Ok(match expr {
        Expr::Int(n) => ring.integer((*n % ring.characteristic()) as i64),
        Expr::Sym(s) => resolve(s).ok_or_else(|| Error::Parse { pos: 0, msg: format!("unknown symbol '{s}'") })?,
        Expr::Neg(e) => ring.neg(&evaluate(e, ring, resolve)?),
        Expr::Sum(ts) => {
            let mut acc = ring.zero();
            for t in ts {
                acc = ring.add(&acc, &evaluate(t, ring, resolve)?);
            }
            acc
        }
        Expr::Product(fs) => {
            let mut acc = ring.one();
            for f in fs {
                acc = ring.mul(&acc, &evaluate(f, ring, resolve)?);
            }
            acc
        }
        Expr::Pow(b, e) => ring.pow(&evaluate(b, ring, resolve)?, *e as u64),
    })
}

/// Resolves the generator symbols of every level of a tower.
fn tower_symbol(field: &FiniteField, name: &str) -> Option<FieldElement> {
    let mut cur = Some(field);
    while let Some(f) = cur {
        if f.base().is_some() && f.generator_name() == name {
            return Some(f.generator());
        }
        cur = f.base();
    }
    None
}

pub fn parse_field_element(src: &str, field: &FiniteField) -> Result<FieldElement> {
    let e = parse_expr(src)?;
    evaluate(&e, field, &|s| tower_symbol(field, s))
}

/// Parses a polynomial in `ring.var_name()` with coefficients in the tower `ring.base()`.
pub fn parse_poly(src: &str, ring: &PolyRing<FiniteField>) -> Result<Poly<FieldElement>> {
    let e = parse_expr(src)?;
    let field = ring.base().clone();
    evaluate(&e, ring, &|s| {
        if s == ring.var_name() {
            Some(ring.x())
        } else {
            tower_symbol(&field, s).map(|c| ring.constant(c))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_primes() {
        let f3 = FiniteField::gf(3).unwrap();
        let r = PolyRing::new(f3, "T");
        let p = parse_poly("T-1", &r).unwrap();
        assert_eq!(r.render(&p), "T + 2");
        let q = parse_poly("T^2 + 1", &r).unwrap();
        assert_eq!(q.degree(), Some(2));
        assert!(parse_poly("T^2 + ", &r).is_err());
        assert!(parse_poly("T^2 + y", &r).is_err());
        assert!(parse_poly("T^-1", &r).is_err());
    }

    #[test]
    fn roundtrips_rendered_polynomials() {
        let f4 = FiniteField::gf(4).unwrap();
        let r = PolyRing::new(f4, "T");
        for src in ["T^3 + x*T + 1", "(x + 1)*T^2 + x", "T^5 + T^4 + (x + 1)*T + x"] {
            let p = parse_poly(src, &r).unwrap();
            assert_eq!(r.render(&p), src);
        }
    }

    #[test]
    fn parses_tower_elements() {
        let f4 = FiniteField::gf(4).unwrap();
        let k = FiniteField::extension_of_degree(&f4, 2, "a").unwrap();
        let e = parse_field_element("(x + 1)*a + x", &k).unwrap();
        assert_eq!(k.render(&e), "(x + 1)*a + x");
        assert_eq!(parse_field_element("a^16", &k).unwrap(), k.generator());
    }
}
