//! `A[1/T]`: polynomials in `T` over `F_q` with negative powers of `T` allowed.

use super::field::{FieldElement, FiniteField};
use super::poly::{Poly, PolyRing};
use super::ring::{Field, Ring};

/// `numerator / T^shift`, in lowest terms: when `shift > 0` the numerator has
/// a nonzero constant term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Laurent {
    pub numerator: Poly<FieldElement>,
    pub shift: u32,
}

#[derive(Clone, Debug)]
pub struct LaurentRing {
    tpoly: PolyRing<FiniteField>,
}

impl LaurentRing {
    pub fn new(fq: FiniteField) -> Self {
        LaurentRing { tpoly: PolyRing::new(fq, "T") }
    }

    pub fn tpoly(&self) -> &PolyRing<FiniteField> {
        &self.tpoly
    }

    pub fn field(&self) -> &FiniteField {
        self.tpoly.base()
    }

    fn normalize(&self, numerator: Poly<FieldElement>, shift: u32) -> Laurent {
        if numerator.is_zero() {
            return Laurent { numerator, shift: 0 };
        }
        let lead_zeros = numerator.coeffs().iter().take_while(|c| c.index() == 0).count() as u32;
        let cancel = lead_zeros.min(shift);
        let numerator =
            if cancel > 0 { self.tpoly.from_coeffs(numerator.coeffs()[cancel as usize..].to_vec()) } else { numerator };
        Laurent { numerator, shift: shift - cancel }
    }

    pub fn from_tpoly(&self, f: Poly<FieldElement>) -> Laurent {
        Laurent { numerator: f, shift: 0 }
    }

    /// `c * T^e` for any integer `e`.
    pub fn monomial(&self, c: FieldElement, e: i64) -> Laurent {
        if e >= 0 {
            self.from_tpoly(self.tpoly.monomial(c, e as usize))
        } else {
            self.normalize(self.tpoly.constant(c), (-e) as u32)
        }
    }

    /// `f / T^k`.
    pub fn div_t_power(&self, f: &Laurent, k: u32) -> Laurent {
        self.normalize(f.numerator.clone(), f.shift + k)
    }

    /// The polynomial part when there is no denominator.
    pub fn as_tpoly(&self, f: &Laurent) -> Option<Poly<FieldElement>> {
        (f.shift == 0).then(|| f.numerator.clone())
    }

    /// Evaluates at a point where `T` is invertible, landing in `target`
    /// (which must contain `F_q` as a tower subfield).
    pub fn eval_in(&self, f: &Laurent, target: &FiniteField, t: FieldElement) -> Option<FieldElement> {
        let num = f.numerator.coeffs().iter().rev().fold(target.zero(), |acc, c| target.add(&target.mul(&acc, &t), c));
        if f.shift == 0 {
            return Some(num);
        }
        let tinv = target.inv(&t)?;
        Some(target.mul(&num, &target.pow(&tinv, f.shift as u64)))
    }
}

impl Ring for LaurentRing {
    type Elem = Laurent;

    fn zero(&self) -> Laurent {
        self.from_tpoly(self.tpoly.zero())
    }

    fn one(&self) -> Laurent {
        self.from_tpoly(self.tpoly.one())
    }

    fn is_zero(&self, a: &Laurent) -> bool {
        a.numerator.is_zero()
    }

    fn add(&self, a: &Laurent, b: &Laurent) -> Laurent {
        let s = a.shift.max(b.shift);
        let an = self.tpoly.shift(&a.numerator, (s - a.shift) as usize);
        let bn = self.tpoly.shift(&b.numerator, (s - b.shift) as usize);
        self.normalize(self.tpoly.add(&an, &bn), s)
    }

    fn neg(&self, a: &Laurent) -> Laurent {
        Laurent { numerator: self.tpoly.neg(&a.numerator), shift: a.shift }
    }

    fn mul(&self, a: &Laurent, b: &Laurent) -> Laurent {
        self.normalize(self.tpoly.mul(&a.numerator, &b.numerator), a.shift + b.shift)
    }

    fn integer(&self, n: i64) -> Laurent {
        self.from_tpoly(self.tpoly.integer(n))
    }

    fn characteristic(&self) -> u64 {
        self.tpoly.characteristic()
    }

    fn frobenius(&self, a: &Laurent, q: u64, k: u32) -> Laurent {
        let step = q.pow(k) as u32;
        self.normalize(self.tpoly.frobenius(&a.numerator, q, k), a.shift * step)
    }

    fn render(&self, a: &Laurent) -> String {
        if a.shift == 0 {
            return self.tpoly.render(&a.numerator);
        }
        // each numerator term divided by T^shift, emitted in descending T-degree
        let fq = self.field();
        let mut terms = Vec::new();
        for (i, c) in a.numerator.coeffs().iter().enumerate().rev() {
            if c.index() == 0 {
                continue;
            }
            let e = i as i64 - a.shift as i64;
            let coeff = fq.render(c);
            let mono = match e {
                0 => String::new(),
                1 => "T".to_string(),
                _ => format!("T^{e}"),
            };
            terms.push(if mono.is_empty() {
                coeff
            } else if c.index() == 1 {
                mono
            } else if coeff.contains(' ') {
                format!("({coeff})*{mono}")
            } else {
                format!("{coeff}*{mono}")
            });
        }
        terms.join(" + ")
    }
}
