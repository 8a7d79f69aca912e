//! Primes of `A = F_q[T]` and reduction `A -> κ_{p(T)} = A/(p(T))`.

use std::fmt;

use super::field::{FieldElement, FiniteField};
use super::laurent::{Laurent, LaurentRing};
use super::parse::parse_poly;
use super::poly::{Poly, PolyRing};
use super::ring::{Field, Ring};
use crate::error::{Error, Result};

/// A monic irreducible `p(T) ≠ T` together with its residue field `κ`,
/// whose generator `a` is the image of `T`.
#[derive(Clone)]
pub struct PrimeModulus {
    tpoly: PolyRing<FiniteField>,
    poly: Poly<FieldElement>,
    kappa: FiniteField,
}

impl PrimeModulus {
    /// Validates `p`; a non-monic input is replaced by its monic associate,
    /// which generates the same ideal.
    pub fn new(fq: &FiniteField, p: &Poly<FieldElement>) -> Result<Self> {
        let tpoly = PolyRing::new(fq.clone(), "T");
        match p.degree() {
            None => return Err(Error::InvalidPrime("p(T) must be nonzero".into())),
            Some(0) => return Err(Error::InvalidPrime(format!("{} is a unit, not a prime", tpoly.render(p)))),
            _ => {}
        }
        let poly = tpoly.monic(p);
        if poly == tpoly.x() {
            return Err(Error::InvalidPrime("p(T) = T is excluded; the prime must satisfy p(T) ≠ T".into()));
        }
        if !tpoly.is_irreducible(&poly)? {
            return Err(Error::InvalidPrime(format!(
                "{} is reducible over F_{}",
                tpoly.render(&poly),
                fq.cardinality()
            )));
        }
        let kappa = FiniteField::extension(fq, poly.coeffs(), "a")?;
        Ok(PrimeModulus { tpoly, poly, kappa })
    }

    /// Parses `src` in the polynomial grammar over `F_q`.
    pub fn parse(q: u64, src: &str) -> Result<Self> {
        let fq = FiniteField::gf(q)?;
        let tpoly = PolyRing::new(fq.clone(), "T");
        let p = parse_poly(src, &tpoly)?;
        Self::new(&fq, &p)
    }

    /// All monic irreducible polynomials of degree `d` other than `T`, in
    /// increasing order of their coefficient encoding.
    pub fn all_of_degree(fq: &FiniteField, d: u32) -> Vec<PrimeModulus> {
        let q = fq.cardinality();
        let tpoly = PolyRing::new(fq.clone(), "T");
        let mut out = Vec::new();
        for n in 0..q.pow(d) {
            let mut coeffs: Vec<FieldElement> =
                (0..d).map(|i| FieldElement::from_index(((n / q.pow(i)) % q) as u32)).collect();
            coeffs.push(FieldElement::ONE);
            let f = tpoly.from_coeffs(coeffs);
            if f != tpoly.x() && tpoly.is_irreducible(&f).unwrap_or(false) {
                out.push(Self::new(fq, &f).expect("validated above"));
            }
        }
        out
    }

    pub fn fq(&self) -> &FiniteField {
        self.tpoly.base()
    }

    pub fn q(&self) -> u64 {
        self.fq().cardinality()
    }

    pub fn degree(&self) -> u32 {
        self.poly.degree().unwrap() as u32
    }

    pub fn poly(&self) -> &Poly<FieldElement> {
        &self.poly
    }

    pub fn tpoly_ring(&self) -> &PolyRing<FiniteField> {
        &self.tpoly
    }

    /// The residue field `κ_{p(T)}`.
    pub fn kappa(&self) -> &FiniteField {
        &self.kappa
    }

    /// `α = T mod p(T)`, i.e. `γ(T)` in characteristic `p(T)`.
    pub fn alpha(&self) -> FieldElement {
        self.kappa.generator()
    }

    /// `(q^d - 1)/(q - 1)`, the number of supersingular Δ-invariants.
    pub fn supersingular_count(&self) -> u64 {
        (self.q().pow(self.degree()) - 1) / (self.q() - 1)
    }

    pub fn reduce_tpoly(&self, f: &Poly<FieldElement>) -> FieldElement {
        let k = &self.kappa;
        let a = self.alpha();
        f.coeffs().iter().rev().fold(k.zero(), |acc, c| k.add(&k.mul(&acc, &a), c))
    }

    pub fn reduce_laurent(&self, f: &Laurent) -> FieldElement {
        let num = self.reduce_tpoly(&f.numerator);
        let ainv = self.kappa.inv(&self.alpha()).expect("α ≠ 0 since p(T) ≠ T");
        self.kappa.mul(&num, &self.kappa.pow(&ainv, f.shift as u64))
    }

    /// Polynomial ring over `κ` in the given variable.
    pub fn kappa_ring(&self, var: &str) -> PolyRing<FiniteField> {
        PolyRing::new(self.kappa.clone(), var)
    }

    /// Reduces every coefficient of an `A`- or `A[1/T]`-polynomial modulo `p(T)`.
    pub fn reduce_mod_prime<C: ReduceModPrime>(&self, ring: &PolyRing<C>, f: &Poly<C::Elem>) -> Poly<FieldElement> {
        let target = self.kappa_ring(ring.var_name());
        ring.map_into(f, &target, |c| ring.base().reduce_coeff(c, self))
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tpoly.render(&self.poly))
    }
}

impl fmt::Debug for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PrimeModulus(q = {}, {})", self.q(), self)
    }
}

/// Coefficient rings that map onto `κ_{p(T)}`.
pub trait ReduceModPrime: Ring {
    fn reduce_coeff(&self, c: &Self::Elem, p: &PrimeModulus) -> FieldElement;
}

impl ReduceModPrime for PolyRing<FiniteField> {
    fn reduce_coeff(&self, c: &Poly<FieldElement>, p: &PrimeModulus) -> FieldElement {
        p.reduce_tpoly(c)
    }
}

impl ReduceModPrime for LaurentRing {
    fn reduce_coeff(&self, c: &Laurent, p: &PrimeModulus) -> FieldElement {
        p.reduce_laurent(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_t_and_reducibles() {
        assert!(matches!(PrimeModulus::parse(2, "T"), Err(Error::InvalidPrime(m)) if m.contains("≠ T")));
        assert!(PrimeModulus::parse(2, "T^2 + 1").is_err());
        assert!(PrimeModulus::parse(3, "2").is_err());
        assert!(PrimeModulus::parse(3, "T^2 + 1").is_ok());
        // 2T + 1 has monic associate T + 2 over F_3
        let p = PrimeModulus::parse(3, "2*T + 1").unwrap();
        assert_eq!(p.to_string(), "T + 2");
    }

    #[test]
    fn reduction_example() {
        let p = PrimeModulus::parse(2, "T^2 + T + 1").unwrap();
        let a = PolyRing::new(p.fq().clone(), "T");
        let ring = PolyRing::new(a.clone(), "s");
        // s^3 + T s^2 + T^4 s + T^6
        let t = |e: usize| a.monomial(FieldElement::ONE, e);
        let f = ring.from_coeffs(vec![t(6), t(4), t(1), t(0)]);
        let r = p.reduce_mod_prime(&ring, &f);
        assert_eq!(p.kappa_ring("s").render(&r), "s^3 + a*s^2 + a*s + 1");
        // T^(q^d) - T vanishes
        let v = a.sub(&t(4), &t(1));
        assert_eq!(p.reduce_tpoly(&v), FieldElement::ZERO);
        assert_eq!(p.reduce_tpoly(&a.one()), FieldElement::ONE);
    }

    #[test]
    fn counts_primes() {
        let f2 = FiniteField::gf(2).unwrap();
        assert_eq!(PrimeModulus::all_of_degree(&f2, 1).len(), 1);
        assert_eq!(PrimeModulus::all_of_degree(&f2, 3).len(), 2);
        let f4 = FiniteField::gf(4).unwrap();
        assert_eq!(PrimeModulus::all_of_degree(&f4, 3).len(), 20);
    }
}
