//! Finite fields built as towers `F_p ⊆ F_q ⊆ κ ⊆ ...`.
//!
//! Every level is the quotient of a polynomial ring over the level below by
//! an explicitly stored monic irreducible polynomial. Elements are encoded as
//! a single integer index: the coordinates of an element over its immediate
//! base, read as digits in base `|base|`. Because the encoding is applied
//! recursively, the base-`p` digits of an index are exactly its `F_p`
//! coordinates in the tower power basis, and every subfield in the chain
//! embeds with its indices unchanged.
//!
//! Fields with at most [`TABLE_LIMIT`] elements carry discrete log and Zech
//! tables; larger fields fall back to polynomial arithmetic over the base.

use std::fmt;
use std::sync::Arc;

use super::poly::PolyRing;
use super::ring::{Field, Ring};
use crate::error::{Error, Result};

/// Largest cardinality for which log/exp tables are precomputed.
pub const TABLE_LIMIT: u64 = 1 << 16;

const NO_LOG: u32 = u32::MAX;

/// An element of some [`FiniteField`], identified by its tower index.
///
/// The owning field is supplied by context on every operation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn from_index(index: u32) -> Self {
        FieldElement(index)
    }

    pub fn index(self) -> u32 {
        self.0
    }
}

#[derive(Clone)]
pub struct FiniteField(Arc<FieldData>);

struct FieldData {
    p: u32,
    card: u32,
    total_degree: u32,
    rel_degree: u32,
    base: Option<FiniteField>,
    /// Monic defining polynomial over `base`, ascending; `rel_degree + 1` entries.
    modulus: Vec<FieldElement>,
    generator: String,
    tables: Option<Tables>,
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[n] = log(1 + g^n)`, or `NO_LOG` when `1 + g^n = 0`. Empty in characteristic 2.
    zech: Vec<u32>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits `q = p^e`, or returns `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = prime_factors(q)[0];
    let mut e = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

impl FiniteField {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::NotPrimePower(p));
        }
        Ok(FiniteField(Arc::new(FieldData {
            p: p as u32,
            card: p as u32,
            total_degree: 1,
            rel_degree: 1,
            base: None,
            modulus: Vec::new(),
            generator: String::new(),
            tables: None,
        })))
    }

    /// `F_q` with a deterministic defining polynomial in generator `x`.
    pub fn gf(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let fp = Self::prime(p)?;
        if e == 1 {
            Ok(fp)
        } else {
            Self::extension_of_degree(&fp, e, "x")
        }
    }

    /// Adjoins a root of `modulus` (ascending coefficients over `base`).
    pub fn extension(base: &FiniteField, modulus: &[FieldElement], generator: &str) -> Result<Self> {
        let ring = PolyRing::new(base.clone(), "x");
        let f = ring.from_coeffs(modulus.to_vec());
        let deg = ring.degree(&f).ok_or(Error::ConstantPolynomial)?;
        if deg == 0 {
            return Err(Error::ConstantPolynomial);
        }
        if !base.is_one(ring.leading(&f)) {
            return Err(Error::InvalidPrime("defining polynomial is not monic".into()));
        }
        if !ring.is_irreducible(&f)? {
            return Err(Error::InvalidPrime("defining polynomial is reducible".into()));
        }
        Self::from_verified_modulus(base, f.coeffs().to_vec(), generator)
    }

    /// Degree-`m` extension of `base` using the smallest monic irreducible,
    /// where lower coefficients are compared as base-`|base|` integers.
    pub fn extension_of_degree(base: &FiniteField, m: u32, generator: &str) -> Result<Self> {
        if m == 0 {
            return Err(Error::ConstantPolynomial);
        }
        let b = base.cardinality();
        let ring = PolyRing::new(base.clone(), "x");
        let count = b
            .checked_pow(m)
            .filter(|&c| c <= u32::MAX as u64)
            .ok_or_else(|| Error::InvalidPrime(format!("extension of degree {m} is too large")))?;
        for n in 0..count {
            let mut coeffs = Vec::with_capacity(m as usize + 1);
            let mut r = n;
            for _ in 0..m {
                coeffs.push(FieldElement((r % b) as u32));
                r /= b;
            }
            coeffs.push(FieldElement::ONE);
            let f = ring.from_coeffs(coeffs);
            if ring.is_irreducible(&f)? {
                return Self::from_verified_modulus(base, f.coeffs().to_vec(), generator);
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    fn from_verified_modulus(base: &FiniteField, modulus: Vec<FieldElement>, generator: &str) -> Result<Self> {
        let rel_degree = (modulus.len() - 1) as u32;
        let card = base
            .cardinality()
            .checked_pow(rel_degree)
            .filter(|&c| c <= u32::MAX as u64)
            .ok_or_else(|| Error::InvalidPrime("field cardinality exceeds 2^32".into()))?;
        let mut data = FieldData {
            p: base.0.p,
            card: card as u32,
            total_degree: base.0.total_degree * rel_degree,
            rel_degree,
            base: Some(base.clone()),
            modulus,
            generator: generator.to_string(),
            tables: None,
        };
        if card <= TABLE_LIMIT {
            data.tables = Some(data.build_tables());
        }
        Ok(FiniteField(Arc::new(data)))
    }

    pub fn p(&self) -> u64 {
        self.0.p as u64
    }

    pub fn cardinality(&self) -> u64 {
        self.0.card as u64
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.0.total_degree
    }

    /// Degree over the immediate base.
    pub fn relative_degree(&self) -> u32 {
        self.0.rel_degree
    }

    pub fn base(&self) -> Option<&FiniteField> {
        self.0.base.as_ref()
    }

    pub fn generator_name(&self) -> &str {
        &self.0.generator
    }

    pub fn defining_polynomial(&self) -> &[FieldElement] {
        &self.0.modulus
    }

    /// The adjoined root of the defining polynomial.
    pub fn generator(&self) -> FieldElement {
        match &self.0.base {
            None => FieldElement::ONE,
            Some(base) if self.0.rel_degree == 1 => base.neg(&self.0.modulus[0]),
            Some(base) => FieldElement(base.0.card),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.0.card).map(FieldElement)
    }

    /// True if `other` is this field or one of its tower ancestors.
    pub fn contains_subfield(&self, other: &FiniteField) -> bool {
        let mut cur = Some(self);
        while let Some(f) = cur {
            if f == other {
                return true;
            }
            cur = f.base();
        }
        false
    }

    /// Maps an element of a tower ancestor into this field.
    pub fn embed(&self, x: FieldElement, from: &FiniteField) -> Result<FieldElement> {
        if self.contains_subfield(from) {
            Ok(x)
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// Coordinates over the immediate base.
    pub fn coords(&self, x: FieldElement) -> Vec<FieldElement> {
        self.0.coords(x.0)
    }

    pub fn from_coords(&self, coords: &[FieldElement]) -> FieldElement {
        FieldElement(self.0.encode(coords))
    }

    /// `x^(|base|^k)`: the relative Frobenius, which fixes the immediate base.
    /// On a prime field this is the identity.
    pub fn frobenius_rel(&self, x: FieldElement, k: u32) -> FieldElement {
        match &self.0.base {
            None => x,
            Some(b) => self.frobenius(&x, b.cardinality(), k),
        }
    }

    fn data(&self) -> &FieldData {
        &self.0
    }
}

impl FieldData {
    fn base_card(&self) -> u32 {
        self.base.as_ref().map_or(self.p, |b| b.0.card)
    }

    fn coords(&self, mut x: u32) -> Vec<FieldElement> {
        let b = self.base_card();
        (0..self.rel_degree)
            .map(|_| {
                let c = x % b;
                x /= b;
                FieldElement(c)
            })
            .collect()
    }

    fn encode(&self, coords: &[FieldElement]) -> u32 {
        let b = self.base_card() as u64;
        coords.iter().rev().fold(0u64, |acc, c| acc * b + c.0 as u64) as u32
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let p = self.p;
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0u32, 1u32);
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    fn neg_digits(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let p = self.p;
        let mut a = a;
        let (mut out, mut place) = (0u32, 1u32);
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    /// Schoolbook product over the base followed by reduction.
    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let Some(base) = &self.base else {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        };
        let m = self.rel_degree as usize;
        if m == 1 {
            return base.mul(&FieldElement(a), &FieldElement(b)).0;
        }
        let ca = self.coords(a);
        let cb = self.coords(b);
        let mut prod = vec![FieldElement::ZERO; 2 * m - 1];
        for (i, x) in ca.iter().enumerate() {
            if x.0 == 0 {
                continue;
            }
            for (j, y) in cb.iter().enumerate() {
                let t = base.mul(x, y);
                prod[i + j] = base.add(&prod[i + j], &t);
            }
        }
        for i in (m..2 * m - 1).rev() {
            let c = prod[i];
            if c.0 == 0 {
                continue;
            }
            for j in 0..m {
                let t = base.mul(&c, &self.modulus[j]);
                prod[i - m + j] = base.sub(&prod[i - m + j], &t);
            }
        }
        self.encode(&prod[..m])
    }

    fn pow_slow(&self, a: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, b);
            }
            b = self.mul_slow(b, b);
            e >>= 1;
        }
        acc
    }

    fn build_tables(&self) -> Tables {
        let order = self.card as u64 - 1;
        let factors = prime_factors(order);
        let g = (1..self.card)
            .find(|&g| factors.iter().all(|r| self.pow_slow(g, order / r) != 1))
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![NO_LOG; self.card as usize];
        let mut x = 1u32;
        for i in 0..order as u32 {
            exp.push(x);
            log[x as usize] = i;
            x = self.mul_slow(x, g);
        }
        let zech =
            if self.p == 2 { Vec::new() } else { exp.iter().map(|&e| log[self.add_digits(1, e) as usize]).collect() };
        Tables { exp, log, zech }
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.card == other.0.card
                && self.0.modulus == other.0.modulus
                && self.0.generator == other.0.generator
                && self.0.base == other.0.base)
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.base {
            None => write!(f, "GF({})", self.0.p),
            Some(b) => write!(f, "{:?}[{}]/({})", b, self.0.generator, self.render_modulus()),
        }
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.total_degree)
    }
}

impl FiniteField {
    fn render_modulus(&self) -> String {
        match &self.0.base {
            None => String::new(),
            Some(b) => {
                let ring = PolyRing::new(b.clone(), &self.0.generator);
                ring.render(&ring.from_coeffs(self.0.modulus.clone()))
            }
        }
    }
}

impl Ring for FiniteField {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    fn is_zero(&self, a: &FieldElement) -> bool {
        a.0 == 0
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let d = self.data();
        if d.base.is_none() {
            let s = a.0 as u64 + b.0 as u64;
            return FieldElement((s % d.p as u64) as u32);
        }
        if d.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        match &d.tables {
            Some(t) => {
                if a.0 == 0 {
                    return *b;
                }
                if b.0 == 0 {
                    return *a;
                }
                let order = d.card - 1;
                let la = t.log[a.0 as usize];
                let lb = t.log[b.0 as usize];
                let diff = (lb + order - la) % order;
                let z = t.zech[diff as usize];
                if z == NO_LOG {
                    FieldElement::ZERO
                } else {
                    FieldElement(t.exp[((la as u64 + z as u64) % order as u64) as usize])
                }
            }
            None => FieldElement(d.add_digits(a.0, b.0)),
        }
    }

    fn neg(&self, a: &FieldElement) -> FieldElement {
        let d = self.data();
        if d.base.is_none() {
            return FieldElement((d.p - a.0) % d.p);
        }
        FieldElement(d.neg_digits(a.0))
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let d = self.data();
        match &d.tables {
            Some(t) => {
                let order = d.card - 1;
                let s = t.log[a.0 as usize] as u64 + t.log[b.0 as usize] as u64;
                FieldElement(t.exp[(s % order as u64) as usize])
            }
            None => FieldElement(d.mul_slow(a.0, b.0)),
        }
    }

    fn integer(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.0.p as i64) as u32)
    }

    fn characteristic(&self) -> u64 {
        self.0.p as u64
    }

    fn frobenius(&self, a: &FieldElement, q: u64, k: u32) -> FieldElement {
        if a.0 == 0 {
            return *a;
        }
        let order = self.0.card as u64 - 1;
        let e = mod_pow(q, k as u64, order);
        // a^(q^k) with q^k ≡ 0 mod order only happens when order = 1
        self.pow(a, if e == 0 { order } else { e })
    }

    fn render(&self, a: &FieldElement) -> String {
        let d = self.data();
        let Some(base) = &d.base else {
            return a.0.to_string();
        };
        if d.rel_degree == 1 {
            return base.render(a);
        }
        let coords = d.coords(a.0);
        let mut terms = Vec::new();
        for (i, c) in coords.iter().enumerate().rev() {
            if c.0 == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => d.generator.clone(),
                _ => format!("{}^{}", d.generator, i),
            };
            let coeff = base.render(c);
            terms.push(match (mono.is_empty(), c.0 == 1) {
                (true, _) => coeff,
                (false, true) => mono,
                (false, false) if coeff.contains(" + ") => format!("({coeff})*{mono}"),
                (false, false) => format!("{coeff}*{mono}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    fn pow(&self, a: &FieldElement, n: u64) -> FieldElement {
        if n == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let d = self.data();
        match &d.tables {
            Some(t) => {
                let order = (d.card - 1) as u128;
                let e = (t.log[a.0 as usize] as u128 * (n as u128 % order)) % order;
                FieldElement(t.exp[e as usize])
            }
            None => {
                let order = d.card as u64 - 1;
                let e = n % order;
                FieldElement(d.pow_slow(a.0, if e == 0 { order } else { e }))
            }
        }
    }
}

impl Field for FiniteField {
    fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return None;
        }
        let d = self.data();
        match &d.tables {
            Some(t) => {
                let order = d.card - 1;
                let l = t.log[a.0 as usize];
                Some(FieldElement(t.exp[((order - l) % order) as usize]))
            }
            None => Some(self.pow(a, d.card as u64 - 2)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> FiniteField {
        FiniteField::gf(4).unwrap()
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(4), Some((2, 2)));
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert!(FiniteField::gf(12).is_err());
    }

    #[test]
    fn f4_defining_relation() {
        let f = f4();
        let x = f.generator();
        // x^2 = x + 1
        assert_eq!(f.mul(&x, &x), f.add(&x, &f.one()));
        assert_eq!(f.render(&f.mul(&x, &x)), "x + 1");
        assert_eq!(f.frobenius_rel(x, 1), f.add(&x, &f.one()));
    }

    #[test]
    fn frobenius_fixes_prime_subfield() {
        let f = FiniteField::gf(9).unwrap();
        for a in 0..3 {
            let e = FieldElement(a);
            assert_eq!(f.frobenius(&e, 3, 1), e);
        }
        let x = f.generator();
        assert_ne!(f.frobenius(&x, 3, 1), x);
        assert_eq!(f.frobenius(&x, 3, 2), x);
    }

    #[test]
    fn inverses_and_fermat() {
        for q in [2u64, 3, 4, 5, 8, 9, 25, 27, 49] {
            let f = FiniteField::gf(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.pow(&a, q), a, "x^q = x in GF({q})");
                if a.0 != 0 {
                    assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
                }
            }
        }
    }

    #[test]
    fn table_and_slow_paths_agree() {
        let f = FiniteField::gf(27).unwrap();
        let d = f.data();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.mul(&a, &b).0, d.mul_slow(a.0, b.0));
                assert_eq!(f.add(&a, &b).0, d.add_digits(a.0, b.0));
            }
        }
    }

    #[test]
    fn tower_embeds_subfields() {
        let f4 = f4();
        let f16 = FiniteField::extension_of_degree(&f4, 2, "a").unwrap();
        assert_eq!(f16.cardinality(), 16);
        assert!(f16.contains_subfield(&f4));
        let x = f4.generator();
        let xe = f16.embed(x, &f4).unwrap();
        assert_eq!(f16.mul(&xe, &xe), f16.add(&xe, &f16.one()));
        // κ of degree 2 over F_q: α^(q^2) = α
        assert_eq!(f16.frobenius_rel(f16.generator(), 2), f16.generator());
        let f3 = FiniteField::gf(3).unwrap();
        assert_eq!(f16.embed(FieldElement::ONE, &f3), Err(Error::ContextMismatch));
    }

    #[test]
    fn reducible_modulus_rejected() {
        let f2 = FiniteField::gf(2).unwrap();
        // x^2 + 1 = (x + 1)^2
        let m = [FieldElement(1), FieldElement(0), FieldElement(1)];
        assert!(FiniteField::extension(&f2, &m, "x").is_err());
    }

    #[test]
    fn render_nested() {
        let f4 = f4();
        let k = FiniteField::extension_of_degree(&f4, 2, "a").unwrap();
        let x = k.embed(f4.generator(), &f4).unwrap();
        let a = k.generator();
        let e = k.add(&k.mul(&k.add(&x, &k.one()), &a), &x);
        assert_eq!(k.render(&e), "(x + 1)*a + x");
        assert_eq!(k.render(&k.zero()), "0");
    }
}
