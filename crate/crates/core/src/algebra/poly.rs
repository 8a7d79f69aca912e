//! Dense univariate polynomials over any [`Ring`].

use std::sync::Arc;

use super::ring::{Field, Ring};
use crate::error::{Error, Result};

/// Coefficients in ascending degree, never with a trailing zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E> Poly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
}

/// Quotient and remainder.
pub type QuotRem<E> = (Poly<E>, Poly<E>);

/// `R[var]`.
#[derive(Clone, Debug)]
pub struct PolyRing<R: Ring> {
    base: R,
    var: Arc<str>,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R, var: &str) -> Self {
        PolyRing { base, var: Arc::from(var) }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn var_name(&self) -> &str {
        &self.var
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<R::Elem>) -> Poly<R::Elem> {
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(&self, c: R::Elem) -> Poly<R::Elem> {
        self.from_coeffs(vec![c])
    }

    pub fn monomial(&self, c: R::Elem, n: usize) -> Poly<R::Elem> {
        let mut v = vec![self.base.zero(); n];
        v.push(c);
        self.from_coeffs(v)
    }

    /// The variable itself.
    pub fn x(&self) -> Poly<R::Elem> {
        self.monomial(self.base.one(), 1)
    }

    pub fn degree(&self, f: &Poly<R::Elem>) -> Option<usize> {
        f.degree()
    }

    pub fn coeff(&self, f: &Poly<R::Elem>, i: usize) -> R::Elem {
        f.coeffs.get(i).cloned().unwrap_or_else(|| self.base.zero())
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self, f: &Poly<R::Elem>) -> R::Elem {
        f.coeffs.last().cloned().unwrap_or_else(|| self.base.zero())
    }

    pub fn leading<'a>(&self, f: &'a Poly<R::Elem>) -> &'a R::Elem {
        f.coeffs.last().expect("leading coefficient of the zero polynomial")
    }

    pub fn is_monic(&self, f: &Poly<R::Elem>) -> bool {
        f.coeffs.last().is_some_and(|c| self.base.is_one(c))
    }

    pub fn scale(&self, f: &Poly<R::Elem>, c: &R::Elem) -> Poly<R::Elem> {
        self.from_coeffs(f.coeffs.iter().map(|a| self.base.mul(a, c)).collect())
    }

    /// `f * var^n`.
    pub fn shift(&self, f: &Poly<R::Elem>, n: usize) -> Poly<R::Elem> {
        if f.is_zero() {
            return f.clone();
        }
        let mut v = vec![self.base.zero(); n];
        v.extend(f.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    pub fn eval(&self, f: &Poly<R::Elem>, x: &R::Elem) -> R::Elem {
        f.coeffs.iter().rev().fold(self.base.zero(), |acc, c| self.base.add(&self.base.mul(&acc, x), c))
    }

    /// `f(g)`.
    pub fn compose(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Poly<R::Elem> {
        f.coeffs.iter().rev().fold(self.zero(), |acc, c| {
            let t = self.mul(&acc, g);
            self.add(&t, &self.constant(c.clone()))
        })
    }

    pub fn derivative(&self, f: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.from_coeffs(
            f.coeffs.iter().enumerate().skip(1).map(|(i, c)| self.base.mul(&self.base.integer(i as i64), c)).collect(),
        )
    }

    /// Applies `map` to each coefficient, landing in `target`.
    pub fn map_into<S: Ring>(
        &self,
        f: &Poly<R::Elem>,
        target: &PolyRing<S>,
        map: impl Fn(&R::Elem) -> S::Elem,
    ) -> Poly<S::Elem> {
        target.from_coeffs(f.coeffs.iter().map(map).collect())
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = Poly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        Poly { coeffs: Vec::new() }
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let (long, short) = if a.coeffs.len() >= b.coeffs.len() { (a, b) } else { (b, a) };
        let mut v = long.coeffs.clone();
        for (x, y) in v.iter_mut().zip(short.coeffs.iter()) {
            *x = self.base.add(x, y);
        }
        self.from_coeffs(v)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Poly { coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect() }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut v = vec![self.base.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if self.base.is_zero(y) {
                    continue;
                }
                let t = self.base.mul(x, y);
                v[i + j] = self.base.add(&v[i + j], &t);
            }
        }
        self.from_coeffs(v)
    }

    fn integer(&self, n: i64) -> Self::Elem {
        self.constant(self.base.integer(n))
    }

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    /// Frobenius acts on coefficients and multiplies every exponent by `q^k`.
    fn frobenius(&self, a: &Self::Elem, q: u64, k: u32) -> Self::Elem {
        if a.is_zero() {
            return a.clone();
        }
        let step = q.pow(k) as usize;
        let deg = a.coeffs.len() - 1;
        let mut v = vec![self.base.zero(); deg * step + 1];
        for (i, c) in a.coeffs.iter().enumerate() {
            if !self.base.is_zero(c) {
                v[i * step] = self.base.frobenius(c, q, k);
            }
        }
        self.from_coeffs(v)
    }

    /// Descending terms `c*V^e` joined by ` + `.
    fn render(&self, a: &Self::Elem) -> String {
        let mut terms = Vec::new();
        for (i, c) in a.coeffs.iter().enumerate().rev() {
            if self.base.is_zero(c) {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => self.var.to_string(),
                _ => format!("{}^{}", self.var, i),
            };
            let coeff = self.base.render(c);
            terms.push(if mono.is_empty() {
                coeff
            } else if self.base.is_one(c) {
                mono
            } else if coeff.contains(' ') {
                format!("({coeff})*{mono}")
            } else {
                format!("{coeff}*{mono}")
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

impl<F: Field> PolyRing<F> {
    pub fn monic(&self, f: &Poly<F::Elem>) -> Poly<F::Elem> {
        match f.coeffs.last() {
            None => f.clone(),
            Some(lc) => {
                let inv = self.base.inv(lc).expect("nonzero leading coefficient");
                self.scale(f, &inv)
            }
        }
    }

    pub fn div_rem(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Result<QuotRem<F::Elem>> {
        let dg = g.degree().ok_or(Error::DivisionByZero)?;
        let inv_lc = self.base.inv(self.leading(g)).ok_or(Error::DivisionByZero)?;
        let mut r = f.coeffs.clone();
        if r.len() <= dg {
            return Ok((self.zero(), f.clone()));
        }
        let mut quot = vec![self.base.zero(); r.len() - dg];
        for i in (dg..r.len()).rev() {
            let c = self.base.mul(&r[i], &inv_lc);
            if self.base.is_zero(&c) {
                continue;
            }
            for (j, gc) in g.coeffs.iter().enumerate() {
                let t = self.base.mul(&c, gc);
                r[i - dg + j] = self.base.sub(&r[i - dg + j], &t);
            }
            quot[i - dg] = c;
        }
        r.truncate(dg);
        Ok((self.from_coeffs(quot), self.from_coeffs(r)))
    }

    pub fn rem(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        Ok(self.div_rem(f, g)?.1)
    }

    /// `f / g` when `g` divides `f`, otherwise `None`.
    pub fn div_exact(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        let (q, r) = self.div_rem(f, g).ok()?;
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        if f.is_zero() && g.is_zero() {
            return Err(Error::UndefinedGcd);
        }
        let (mut a, mut b) = (f.clone(), g.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b)?;
            a = b;
            b = r;
        }
        Ok(self.monic(&a))
    }

    pub fn mul_mod(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>, m: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        self.rem(&self.mul(a, b), m)
    }

    pub fn pow_mod(&self, a: &Poly<F::Elem>, mut e: u64, m: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        let mut acc = self.rem(&self.one(), m)?;
        let mut b = self.rem(a, m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_mod(&acc, &b, m)?;
            }
            e >>= 1;
            if e > 0 {
                b = self.mul_mod(&b, &b, m)?;
            }
        }
        Ok(acc)
    }
}

impl PolyRing<super::field::FiniteField> {
    /// Irreducibility over the coefficient field via
    /// `gcd(f, x^(Q^i) - x) = 1` for `1 <= i <= deg f / 2`, `Q = |field|`.
    pub fn is_irreducible(&self, f: &Poly<super::field::FieldElement>) -> Result<bool> {
        let n = match f.degree() {
            None | Some(0) => return Err(Error::ConstantPolynomial),
            Some(n) => n,
        };
        if n == 1 {
            return Ok(true);
        }
        let f = self.monic(f);
        let card = self.base.cardinality();
        let x = self.x();
        let mut xp = x.clone();
        for _ in 1..=n / 2 {
            xp = self.pow_mod(&xp, card, &f)?;
            let g = self.gcd(&f, &self.sub(&xp, &x))?;
            if g.degree() != Some(0) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{FieldElement, FiniteField};

    fn ring(q: u64, var: &str) -> PolyRing<FiniteField> {
        PolyRing::new(FiniteField::gf(q).unwrap(), var)
    }

    fn p(r: &PolyRing<FiniteField>, c: &[u32]) -> Poly<FieldElement> {
        r.from_coeffs(c.iter().map(|&i| FieldElement::from_index(i)).collect())
    }

    #[test]
    fn gcd_examples() {
        let r = ring(2, "T");
        // gcd(T^2 + T, T) = T
        assert_eq!(r.gcd(&p(&r, &[0, 1, 1]), &p(&r, &[0, 1])).unwrap(), r.x());
        // gcd(f, 0) = monic f
        let r3 = ring(3, "T");
        let f = p(&r3, &[1, 0, 2]);
        assert_eq!(r3.gcd(&f, &r3.zero()).unwrap(), p(&r3, &[2, 0, 1]));
        assert_eq!(r3.gcd(&r3.zero(), &r3.zero()), Err(Error::UndefinedGcd));
    }

    #[test]
    fn irreducibility_examples() {
        let r2 = ring(2, "T");
        assert!(r2.is_irreducible(&p(&r2, &[1, 1, 1])).unwrap());
        assert!(!r2.is_irreducible(&p(&r2, &[1, 0, 1])).unwrap());
        let r3 = ring(3, "T");
        assert!(r3.is_irreducible(&p(&r3, &[1, 0, 1])).unwrap());
        assert_eq!(r3.is_irreducible(&p(&r3, &[2])), Err(Error::ConstantPolynomial));
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2 over F_2 has no roots but is reducible
        assert!(!r2.is_irreducible(&p(&r2, &[1, 0, 1, 0, 1])).unwrap());
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // number of monic irreducibles of degree 3 over F_q is (q^3 - q)/3
        for q in [2u64, 3, 4, 5] {
            let r = ring(q, "T");
            let mut count = 0;
            for n in 0..q.pow(3) {
                let c: Vec<u32> = (0..3).map(|i| ((n / q.pow(i)) % q) as u32).chain([1]).collect();
                if r.is_irreducible(&p(&r, &c)).unwrap() {
                    count += 1;
                }
            }
            assert_eq!(count, (q.pow(3) - q) / 3, "q = {q}");
        }
    }

    #[test]
    fn div_rem_reconstructs() {
        let r = ring(5, "s");
        let f = p(&r, &[3, 1, 4, 1, 2, 3]);
        let g = p(&r, &[2, 0, 1]);
        let (qt, rm) = r.div_rem(&f, &g).unwrap();
        assert_eq!(r.add(&r.mul(&qt, &g), &rm), f);
        assert!(rm.degree().unwrap_or(0) < 2);
        assert_eq!(r.div_rem(&f, &r.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn frobenius_scales_exponents() {
        let r = ring(3, "s");
        let f = p(&r, &[1, 2, 1]);
        assert_eq!(r.frobenius(&f, 3, 1), r.pow(&f, 3));
        assert_eq!(r.frobenius(&f, 3, 2), r.pow(&f, 9));
    }

    #[test]
    fn render_grammar() {
        let r = ring(2, "T");
        assert_eq!(r.render(&p(&r, &[1, 1, 1])), "T^2 + T + 1");
        let r4 = ring(4, "s");
        let x = r4.base().generator();
        let f = r4.from_coeffs(vec![FieldElement::ONE, r4.base().add(&x, &FieldElement::ONE), x]);
        assert_eq!(r4.render(&f), "x*s^2 + (x + 1)*s + 1");
        assert_eq!(r4.render(&r4.zero()), "0");
    }

    #[test]
    fn compose_and_derivative() {
        let r = ring(3, "s");
        let f = p(&r, &[0, 0, 1]); // s^2
        let g = p(&r, &[1, 1]); // s + 1
        assert_eq!(r.compose(&f, &g), p(&r, &[1, 2, 1]));
        // d/ds s^3 = 0 in characteristic 3
        assert!(r.derivative(&p(&r, &[0, 0, 0, 1])).is_zero());
    }
}
