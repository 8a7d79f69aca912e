//! The universal sequences `u_i(s) ∈ A[s]` and `U_i(s) ∈ A[1/T][s]`.
//!
//! `u_{-1} = 0`, `u_0 = 1`,
//! `u_{i+1} = (s + T^q)^{q^i} u_i − (T^{q^i} − T) s^{q^i} u_{i−1}`,
//! and `U_i` follows the same pattern in the λ-variable with
//! `((s^q − s)^{q−1} + T^{−(q−1)})^{q^i}` and
//! `(T^{q^i} − T) T^{−q^{i+1}} (s^q − s)^{(q−1)q^{i−1}}`.
//! Reducing `u_d` (resp. `U_d`) modulo any prime of degree `d` yields the
//! Deuring polynomial in Δ (resp. λ).

use serde::Serialize;

use crate::algebra::{FieldElement, FiniteField, LaurentRing, Poly, PolyRing, PrimeModulus, Ring, TPoly};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variant {
    /// `u_i`, the Δ-line sequence over `A`.
    #[serde(rename = "u")]
    Delta,
    /// `U_i`, the λ-line sequence over `A[1/T]`.
    #[serde(rename = "U")]
    Lambda,
}

/// Terms `i = −1, 0, …, i_max` of a universal sequence.
#[derive(Clone, Debug)]
pub struct UniversalSequence<C: Ring> {
    pub variant: Variant,
    pub q: u64,
    ring: PolyRing<C>,
    polys: Vec<Poly<C::Elem>>,
}

impl<C: Ring> UniversalSequence<C> {
    pub fn ring(&self) -> &PolyRing<C> {
        &self.ring
    }

    /// Largest computed index.
    pub fn max_index(&self) -> usize {
        self.polys.len() - 2
    }

    /// Term `i`, for `−1 ≤ i ≤ max_index`.
    pub fn get(&self, i: isize) -> &Poly<C::Elem> {
        &self.polys[(i + 1) as usize]
    }

    pub fn to_json(&self) -> serde_json::Value {
        let polys: Vec<Vec<String>> =
            self.polys.iter().map(|f| f.coeffs().iter().map(|c| self.ring.base().render(c)).collect()).collect();
        serde_json::json!({
            "variant": self.variant,
            "q": self.q,
            "start_index": -1,
            "polys": polys,
        })
    }
}

pub type DeltaSequence = UniversalSequence<PolyRing<FiniteField>>;
pub type LambdaSequence = UniversalSequence<LaurentRing>;

/// `A[s]` over `F_q`, with `T` as the inner variable.
pub fn a_s_ring(fq: &FiniteField) -> PolyRing<PolyRing<FiniteField>> {
    PolyRing::new(PolyRing::new(fq.clone(), "T"), "s")
}

fn t_power(a: &PolyRing<FiniteField>, e: u64) -> TPoly {
    a.monomial(FieldElement::ONE, e as usize)
}

/// `T^(q^i) − T`.
fn t_q_i_minus_t(a: &PolyRing<FiniteField>, q: u64, i: u32) -> TPoly {
    a.sub(&t_power(a, q.pow(i)), &t_power(a, 1))
}

/// `u_{−1}, …, u_{i_max}` over `A = F_q[T]`.
pub fn u_sequence(fq: &FiniteField, i_max: usize) -> DeltaSequence {
    let q = fq.cardinality();
    let ring = a_s_ring(fq);
    let a = ring.base().clone();
    // s + T^q
    let step = ring.from_coeffs(vec![t_power(&a, q), a.one()]);
    let mut polys = vec![ring.zero(), ring.one()];
    for i in 0..i_max as u32 {
        let qi = q.pow(i);
        let first = ring.mul(&ring.frobenius(&step, q, i), &polys[i as usize + 1]);
        let prev = &polys[i as usize];
        let second = ring.shift(&ring.scale(prev, &t_q_i_minus_t(&a, q, i)), qi as usize);
        polys.push(ring.sub(&first, &second));
    }
    UniversalSequence { variant: Variant::Delta, q, ring, polys }
}

/// `U_{−1}, …, U_{i_max}` over `A[1/T]`. At `i = 0` the second term is zero:
/// both `T^(q^0) − T` and `U_{−1}` vanish.
#[allow(non_snake_case)]
pub fn U_sequence(fq: &FiniteField, i_max: usize) -> LambdaSequence {
    let q = fq.cardinality();
    let lr = LaurentRing::new(fq.clone());
    let ring = PolyRing::new(lr.clone(), "s");
    // W = (s^q − s)^(q−1)
    let sq_minus_s = ring.sub(&ring.monomial(lr.one(), q as usize), &ring.x());
    let w = ring.pow(&sq_minus_s, q - 1);
    let step = ring.add(&w, &ring.constant(lr.monomial(FieldElement::ONE, -(q as i64 - 1))));
    let mut polys = vec![ring.zero(), ring.one()];
    for i in 0..i_max as u32 {
        let first = ring.mul(&ring.frobenius(&step, q, i), &polys[i as usize + 1]);
        let next = if i == 0 {
            first
        } else {
            let c = lr.div_t_power(&lr.from_tpoly(t_q_i_minus_t(lr.tpoly(), q, i)), q.pow(i + 1) as u32);
            let wpow = ring.frobenius(&w, q, i - 1);
            let second = ring.scale(&ring.mul(&wpow, &polys[i as usize]), &c);
            ring.sub(&first, &second)
        };
        polys.push(next);
    }
    UniversalSequence { variant: Variant::Lambda, q, ring, polys }
}

/// `(q^i − 1)/(q − 1)`.
pub fn expected_degree(q: u64, i: u32) -> u64 {
    (q.pow(i) - 1) / (q - 1)
}

/// `u_i(0) = T^(q(q^i − 1)/(q − 1))`.
pub fn expected_constant_term(seq: &DeltaSequence, i: usize) -> TPoly {
    let a = seq.ring().base();
    t_power(a, seq.q * expected_degree(seq.q, i as u32))
}

/// `Σ c_j num^j den^(n − j)` for `f = Σ c_j s^j` with `deg f ≤ n`: the
/// numerator of `f(num/den)` over the common denominator `den^n`.
fn homogenized<R: Ring>(
    ring: &PolyRing<R>,
    f: &Poly<R::Elem>,
    num: &Poly<R::Elem>,
    den: &Poly<R::Elem>,
    n: usize,
) -> Poly<R::Elem> {
    let mut acc = ring.zero();
    let mut num_pow = ring.one();
    for (j, c) in f.coeffs().iter().enumerate() {
        if j > 0 {
            num_pow = ring.mul(&num_pow, num);
        }
        let t = ring.mul(&ring.scale(&num_pow, c), &ring.pow(den, (n - j) as u64));
        acc = ring.add(&acc, &t);
    }
    acc
}

/// Both sides of the key identity for `u_i`, multiplied through by
/// `(s+1)^((q−1)·deg u_i)`:
///
/// `u_i(D0) − (T(s+1))^(q^i−1) u_i(D1) = −(T^(q^i) − T)(T(s+1))^(q^i−1) u_{i−1}(D1)`
///
/// with `D0 = −T^q s(s+1)^(q−1)` and `D1 = −T s^q/(s+1)^(q−1)`.
pub fn key_identity_sides(seq: &DeltaSequence, i: usize) -> (Poly<TPoly>, Poly<TPoly>) {
    let ring = seq.ring();
    let a = ring.base();
    let q = seq.q;
    let s_plus_1 = ring.from_coeffs(vec![a.one(), a.one()]);
    let den = ring.pow(&s_plus_1, q - 1);
    let t = ring.constant(t_power(a, 1));
    let d0 = ring.neg(&ring.mul(&ring.scale(&ring.x(), &t_power(a, q)), &den));
    let num1 = ring.neg(&ring.monomial(t_power(a, 1), q as usize));
    let n = seq.get(i as isize).degree().unwrap_or(0);
    let ui = seq.get(i as isize);
    let uprev = seq.get(i as isize - 1);
    let cleared = ring.pow(&den, n as u64);
    let factor = ring.pow(&ring.mul(&t, &s_plus_1), q.pow(i as u32) - 1);
    let lhs = ring
        .sub(&ring.mul(&ring.compose(ui, &d0), &cleared), &ring.mul(&factor, &homogenized(ring, ui, &num1, &den, n)));
    let coeff = ring.constant(t_q_i_minus_t(a, q, i as u32));
    let rhs = ring.neg(&ring.mul(&ring.mul(&coeff, &factor), &homogenized(ring, uprev, &num1, &den, n)));
    (lhs, rhs)
}

/// Exact check of the key identity for `u_i` over `F_q`.
pub fn check_key_identity(fq: &FiniteField, i: usize) -> bool {
    let seq = u_sequence(fq, i);
    let (lhs, rhs) = key_identity_sides(&seq, i);
    lhs == rhs
}

/// `u_d mod p(T)` has only simple roots and does not vanish at 0.
pub fn check_simple_roots(p: &PrimeModulus) -> Result<bool> {
    let seq = u_sequence(p.fq(), p.degree() as usize);
    let h = p.reduce_mod_prime(seq.ring(), seq.get(p.degree() as isize));
    let kr = p.kappa_ring("s");
    let g = kr.gcd(&h, &kr.derivative(&h))?;
    Ok(g.degree() == Some(0) && !kr.coeff(&h, 0).eq(&FieldElement::ZERO))
}

/// Outcome of differentiating the defining recursion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivativeReport {
    /// `u'_{i+1}` from the product rule applied to the recursion matches the
    /// direct derivative, for `0 ≤ i < i_max`.
    pub product_rule: bool,
    /// `(u'_i)` satisfies the recursion itself for every step `i ≥ 1`, where
    /// the derivatives of `(s + T^q)^(q^i)` and `s^(q^i)` vanish.
    pub same_recursion: bool,
}

impl DerivativeReport {
    pub fn passed(&self) -> bool {
        self.product_rule && self.same_recursion
    }
}

pub fn check_derivative_recursion(fq: &FiniteField, i_max: usize) -> DerivativeReport {
    let seq = u_sequence(fq, i_max);
    let ring = seq.ring();
    let a = ring.base();
    let q = seq.q;
    let d: Vec<Poly<TPoly>> = (0..=i_max + 1).map(|k| ring.derivative(seq.get(k as isize - 1))).collect();
    let dget = |i: isize| &d[(i + 1) as usize];
    let step = ring.from_coeffs(vec![t_power(a, q), a.one()]);
    let mut product_rule = true;
    let mut same_recursion = true;
    for i in 0..i_max as isize {
        let qi = q.pow(i as u32);
        let mult = ring.frobenius(&step, q, i as u32);
        let coeff = t_q_i_minus_t(a, q, i as u32);
        let s_pow = ring.monomial(a.one(), qi as usize);
        let pure = ring.sub(&ring.mul(&mult, dget(i)), &ring.scale(&ring.mul(&s_pow, dget(i - 1)), &coeff));
        let full = ring.add(
            &pure,
            &ring.sub(
                &ring.mul(&ring.derivative(&mult), seq.get(i)),
                &ring.scale(&ring.mul(&ring.derivative(&s_pow), seq.get(i - 1)), &coeff),
            ),
        );
        product_rule &= full == *dget(i + 1);
        if i >= 1 {
            same_recursion &= pure == *dget(i + 1);
        }
    }
    DerivativeReport { product_rule, same_recursion }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> FiniteField {
        FiniteField::gf(q).unwrap()
    }

    #[test]
    fn first_terms() {
        let seq = u_sequence(&f(2), 2);
        let ring = seq.ring();
        assert_eq!(ring.render(seq.get(-1)), "0");
        assert_eq!(ring.render(seq.get(0)), "1");
        assert_eq!(ring.render(seq.get(1)), "s + T^2");
        // (s + T^2)^3 − (T^2 + T)s^2 over F_2
        assert_eq!(ring.render(seq.get(2)), "s^3 + T*s^2 + T^4*s + T^6");
        let seq3 = u_sequence(&f(3), 1);
        assert_eq!(seq3.ring().render(seq3.get(1)), "s + T^3");
    }

    #[test]
    fn degrees_monic_and_constant_terms() {
        for q in [2u64, 3, 4, 5] {
            let seq = u_sequence(&f(q), 4);
            for i in 0..=4 {
                let ui = seq.get(i as isize);
                assert_eq!(ui.degree(), Some(expected_degree(q, i as u32) as usize));
                assert!(seq.ring().is_monic(ui));
                assert_eq!(seq.ring().coeff(ui, 0), expected_constant_term(&seq, i));
            }
        }
    }

    #[test]
    fn upper_sequence_first_terms() {
        let seq = U_sequence(&f(2), 2);
        let ring = seq.ring();
        // U_1 = (s^2 + s) + T^-1 over F_2
        assert_eq!(ring.render(seq.get(1)), "s^2 + s + T^-1");
        assert_eq!(seq.get(2).degree(), Some(6));
        for q in [2u64, 3] {
            let seq = U_sequence(&f(q), 3);
            for d in 1..=3u32 {
                let ud = seq.get(d as isize);
                assert_eq!(ud.degree(), Some((q.pow(d + 1) - q) as usize));
                assert!(seq.ring().is_monic(ud));
            }
        }
    }

    #[test]
    fn key_identity_small_cases() {
        for i in 0..=3 {
            assert!(check_key_identity(&f(2), i), "q = 2, i = {i}");
        }
        for i in 0..=2 {
            assert!(check_key_identity(&f(3), i), "q = 3, i = {i}");
        }
        assert!(check_key_identity(&f(4), 2));
    }

    #[test]
    fn key_identity_detects_corruption() {
        let mut seq = u_sequence(&f(2), 2);
        let ring = seq.ring().clone();
        seq.polys[3] = ring.add(&seq.polys[3], &ring.one());
        let (lhs, rhs) = key_identity_sides(&seq, 2);
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn simple_roots() {
        let p = PrimeModulus::parse(2, "T^2 + T + 1").unwrap();
        assert!(check_simple_roots(&p).unwrap());
        let p = PrimeModulus::parse(3, "T - 1").unwrap();
        assert!(check_simple_roots(&p).unwrap());
    }

    #[test]
    fn derivative_sequence() {
        for q in [2u64, 3] {
            let r = check_derivative_recursion(&f(q), 4);
            assert!(r.passed(), "q = {q}: {r:?}");
        }
    }

    #[test]
    fn json_shape() {
        let seq = u_sequence(&f(2), 1);
        let v = seq.to_json();
        assert_eq!(v["variant"], "u");
        assert_eq!(v["polys"][2], serde_json::json!(["T^2", "1"]));
    }
}
