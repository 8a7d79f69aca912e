//! Rank-2 Drinfeld modules `ψ_T = Δτ² − (Δ + γ)τ + γ = (Δτ − γ)(τ − 1)` and
//! their λ-form, supersingularity, and the Deuring polynomials `h` (in Δ)
//! and `H` (in λ).
//!
//! `h` is computed three ways:
//! - directly, by expanding `ψ_{p(T)}` over `κ[Δ]` and reading off `τ^d`;
//! - by the commutation recurrence for the coefficients `g_k` of `ψ_{p(T)}`;
//! - by reducing the universal polynomial `u_d` modulo `p(T)`.
//!
//! The recurrence divides by `T^(q^k) − T`, which vanishes in `κ` once
//! `d | k`, so it is run in generic characteristic (`γ = T` over `A[Δ]`,
//! where every division is exact) and the result is reduced afterwards.

use serde::Serialize;

use crate::algebra::{Field, FieldElement, FiniteField, Poly, PolyRing, PrimeModulus, Ring, TPoly};
use crate::error::{Error, Result};
use crate::ore::{OrePoly, OreRing};
use crate::universal::{a_s_ring, u_sequence, U_sequence};

/// `ψ_T = Δτ² − (Δ + γ)τ + γ` over a field `L ⊇ F_q`.
#[derive(Clone, Debug)]
pub struct DeltaModule {
    fq: FiniteField,
    field: FiniteField,
    pub gamma: FieldElement,
    pub delta: FieldElement,
}

impl DeltaModule {
    pub fn new(fq: &FiniteField, field: &FiniteField, gamma: FieldElement, delta: FieldElement) -> Result<Self> {
        if !field.contains_subfield(fq) {
            return Err(Error::ContextMismatch);
        }
        if gamma == FieldElement::ZERO {
            return Err(Error::ZeroGamma);
        }
        if delta == FieldElement::ZERO {
            return Err(Error::ZeroDelta);
        }
        Ok(DeltaModule { fq: fq.clone(), field: field.clone(), gamma, delta })
    }

    /// The module over `field ⊇ κ` in characteristic `p(T)`, with `γ(T) = α`.
    pub fn in_characteristic(p: &PrimeModulus, field: &FiniteField, delta: FieldElement) -> Result<Self> {
        let gamma = field.embed(p.alpha(), p.kappa())?;
        Self::new(p.fq(), field, gamma, delta)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.fq.cardinality()
    }

    pub fn ore(&self) -> OreRing<FiniteField> {
        OreRing::new(self.field.clone(), self.q())
    }

    pub fn psi_t(&self) -> OrePoly<FieldElement> {
        let l = &self.field;
        let mid = l.neg(&l.add(&self.delta, &self.gamma));
        self.ore().from_coeffs(vec![self.gamma, mid, self.delta])
    }

    /// `(Δ + γ)^(q+1) / Δ`.
    pub fn j_invariant(&self) -> FieldElement {
        let l = &self.field;
        let num = l.pow(&l.add(&self.delta, &self.gamma), self.q() + 1);
        l.div(&num, &self.delta).expect("Δ ≠ 0")
    }

    /// `ψ_a` for `a ∈ A`.
    pub fn image(&self, a: &TPoly, max_degree: usize) -> Result<OrePoly<FieldElement>> {
        let scalars = a.coeffs().iter().map(|c| self.field.embed(*c, &self.fq)).collect::<Result<Vec<_>>>()?;
        Ok(self.ore().drinfeld_image_truncated(&self.psi_t(), &scalars, max_degree))
    }

    /// Whether the coefficient of `τ^d` in `ψ_{p(T)}` vanishes. The field must
    /// have A-characteristic `p(T)`, i.e. `p(γ) = 0`.
    pub fn is_supersingular(&self, p: &PrimeModulus) -> Result<bool> {
        if p.fq() != &self.fq {
            return Err(Error::CharacteristicMismatch);
        }
        let image = self.image(p.poly(), p.degree() as usize)?;
        if !self.field.is_zero(&self.ore().coeff(&image, 0)) {
            return Err(Error::CharacteristicMismatch);
        }
        Ok(self.field.is_zero(&self.ore().coeff(&image, p.degree() as usize)))
    }
}

/// The Legendre form, with `e_1, e_2` mapped to `1, λ`.
#[derive(Clone, Debug)]
pub struct LambdaModule {
    fq: FiniteField,
    field: FiniteField,
    pub gamma: FieldElement,
    pub lambda: FieldElement,
}

impl LambdaModule {
    pub fn new(fq: &FiniteField, field: &FiniteField, gamma: FieldElement, lambda: FieldElement) -> Result<Self> {
        if !field.contains_subfield(fq) {
            return Err(Error::ContextMismatch);
        }
        if gamma == FieldElement::ZERO {
            return Err(Error::ZeroGamma);
        }
        if field.pow(&lambda, fq.cardinality()) == lambda {
            return Err(Error::DegenerateLambda);
        }
        Ok(LambdaModule { fq: fq.clone(), field: field.clone(), gamma, lambda })
    }

    pub fn in_characteristic(p: &PrimeModulus, field: &FiniteField, lambda: FieldElement) -> Result<Self> {
        let gamma = field.embed(p.alpha(), p.kappa())?;
        Self::new(p.fq(), field, gamma, lambda)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    fn lq_minus_l(&self) -> FieldElement {
        let l = &self.field;
        l.sub(&l.pow(&self.lambda, self.fq.cardinality()), &self.lambda)
    }

    /// `Δ = γ/(λ^q − λ)^(q−1)`.
    pub fn to_delta(&self) -> DeltaModule {
        let l = &self.field;
        let w = l.pow(&self.lq_minus_l(), self.fq.cardinality() - 1);
        let delta = l.div(&self.gamma, &w).expect("λ ∉ F_q");
        DeltaModule { fq: self.fq.clone(), field: self.field.clone(), gamma: self.gamma, delta }
    }

    /// `γ^q (1 + (λ^q − λ)^(q−1))^(q+1) / (λ^q − λ)^(q² − q)`.
    pub fn j_invariant(&self) -> FieldElement {
        let l = &self.field;
        let q = self.fq.cardinality();
        let d = self.lq_minus_l();
        let w = l.pow(&d, q - 1);
        let num = l.mul(&l.pow(&self.gamma, q), &l.pow(&l.add(&l.one(), &w), q + 1));
        l.div(&num, &l.pow(&d, q * q - q)).expect("λ ∉ F_q")
    }

    pub fn is_supersingular(&self, p: &PrimeModulus) -> Result<bool> {
        self.to_delta().is_supersingular(p)
    }
}

pub fn delta_from_lambda(m: &LambdaModule) -> DeltaModule {
    m.to_delta()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    #[serde(rename = "direct")]
    Direct,
    #[serde(rename = "g-recurrence")]
    GRecurrence,
    #[serde(rename = "universal")]
    Universal,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Direct, Method::GRecurrence, Method::Universal];

    pub fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::GRecurrence => "g-recurrence",
            Method::Universal => "universal",
        }
    }
}

#[derive(Clone, Debug)]
pub struct DeuringResult {
    pub prime: PrimeModulus,
    /// `h_{p(T)}(s)`, `s` standing for Δ.
    pub h: Poly<FieldElement>,
    /// `H_{p(T)}(s)`, `s` standing for λ.
    pub big_h: Poly<FieldElement>,
    pub method: Method,
}

impl DeuringResult {
    pub fn ring(&self) -> PolyRing<FiniteField> {
        self.prime.kappa_ring("s")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let k = self.prime.kappa();
        let coeffs = |f: &Poly<FieldElement>| f.coeffs().iter().map(|c| k.render(c)).collect::<Vec<_>>();
        serde_json::json!({
            "q": self.prime.q(),
            "p": self.prime.to_string(),
            "d": self.prime.degree(),
            "method": self.method,
            "h_coeffs": coeffs(&self.h),
            "H_coeffs": coeffs(&self.big_h),
        })
    }
}

/// `κ[s]` with `s` for Δ, and `ψ_T = sτ² − (s + α)τ + α` over it.
fn symbolic_psi(p: &PrimeModulus) -> (OreRing<PolyRing<FiniteField>>, OrePoly<Poly<FieldElement>>) {
    let kd = p.kappa_ring("s");
    let ore = OreRing::new(kd.clone(), p.q());
    let gamma = kd.constant(p.alpha());
    let delta = kd.x();
    let psi = ore.from_coeffs(vec![gamma.clone(), kd.neg(&kd.add(&delta, &gamma)), delta]);
    (ore, psi)
}

/// `ψ_{p(T)} = Σ g_k(Δ) τ^k` over `κ[Δ]`, up to τ-degree `max_degree`.
pub fn psi_p_symbolic(p: &PrimeModulus, max_degree: usize) -> Vec<Poly<FieldElement>> {
    let (ore, psi) = symbolic_psi(p);
    let kd = ore.base().clone();
    let scalars: Vec<_> =
        p.poly().coeffs().iter().map(|c| kd.constant(p.kappa().embed(*c, p.fq()).expect("F_q ⊂ κ"))).collect();
    let image = ore.drinfeld_image_truncated(&psi, &scalars, max_degree);
    let top = max_degree.min(2 * p.degree() as usize);
    (0..=top).map(|k| ore.coeff(&image, k)).collect()
}

fn sign_d(p: &PrimeModulus, g: &Poly<FieldElement>) -> Poly<FieldElement> {
    let kd = p.kappa_ring("s");
    if p.degree() % 2 == 1 {
        kd.neg(g)
    } else {
        g.clone()
    }
}

/// `h = (−1)^d g_d` from the expansion of `ψ_{p(T)}`.
pub fn deuring_h_direct(p: &PrimeModulus) -> Poly<FieldElement> {
    let d = p.degree() as usize;
    let g = psi_p_symbolic(p, d);
    sign_d(p, &g[d])
}

/// `g_0, …, g_{k_max}` by the commutation recurrence
///
/// `(T^(q^k) − T) g_k = g_{k−1} Ω^(q^(k−1)) − g_{k−1}^(σ) Ω − (g_{k−2} Δ^(q^(k−2)) − g_{k−2}^(σ²) Δ)`,
///
/// `Ω = Δ + T`, computed over `A[Δ]` and reduced modulo `p(T)`. The seeds
/// `g_0, g_1` come from the τ-degree ≤ 1 part of `ψ_{p(T)}`.
pub fn g_coefficients(p: &PrimeModulus, k_max: usize) -> Result<Vec<Poly<FieldElement>>> {
    let ring = a_s_ring(p.fq());
    let a = ring.base().clone();
    let q = p.q();
    let ore = OreRing::new(ring.clone(), q);
    let t = ring.constant(a.x());
    let delta = ring.x();
    let omega = ring.add(&delta, &t);
    let psi = ore.from_coeffs(vec![t.clone(), ring.neg(&omega), delta.clone()]);
    let scalars: Vec<_> = p.poly().coeffs().iter().map(|c| ring.constant(a.constant(*c))).collect();
    let seed = ore.drinfeld_image_truncated(&psi, &scalars, 1);
    let mut g = vec![ore.coeff(&seed, 0), ore.coeff(&seed, 1)];
    for k in 2..=k_max {
        let (g1, g2) = (&g[k - 1], &g[k - 2]);
        let first = ring.sub(&ring.mul(g1, &ore.twist(&omega, k as u32 - 1)), &ring.mul(&ore.twist(g1, 1), &omega));
        let second = ring.sub(&ring.mul(g2, &ore.twist(&delta, k as u32 - 2)), &ring.mul(&ore.twist(g2, 2), &delta));
        let rhs = ring.sub(&first, &second);
        let divisor = a.sub(&a.monomial(FieldElement::ONE, q.pow(k as u32) as usize), &a.x());
        let coeffs = rhs
            .coeffs()
            .iter()
            .map(|c| a.div_exact(c, &divisor))
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::RecurrenceBreakdown { k })?;
        g.push(ring.from_coeffs(coeffs));
    }
    g.truncate(k_max + 1);
    Ok(g.iter().map(|gk| p.reduce_mod_prime(&ring, gk)).collect())
}

pub fn deuring_h_grec(p: &PrimeModulus) -> Result<Poly<FieldElement>> {
    let d = p.degree() as usize;
    let g = g_coefficients(p, d)?;
    Ok(sign_d(p, &g[d]))
}

/// `u_d mod p(T)`.
pub fn deuring_h_universal(p: &PrimeModulus) -> Poly<FieldElement> {
    let d = p.degree() as usize;
    let seq = u_sequence(p.fq(), d);
    p.reduce_mod_prime(seq.ring(), seq.get(d as isize))
}

/// `U_d mod p(T)`.
pub fn deuring_big_h_universal(p: &PrimeModulus) -> Poly<FieldElement> {
    let d = p.degree() as usize;
    let seq = U_sequence(p.fq(), d);
    p.reduce_mod_prime(seq.ring(), seq.get(d as isize))
}

/// `H(s) = (W/γ^q)^N · h(γ/W)` with `W = (s^q − s)^(q−1)` and
/// `N = (q^d − 1)/(q − 1)`, evaluated as a fraction over `κ[s]` whose
/// denominator must cancel exactly.
#[allow(non_snake_case)]
pub fn deuring_H(p: &PrimeModulus, h: &Poly<FieldElement>) -> Result<Poly<FieldElement>> {
    let k = p.kappa();
    let kr = p.kappa_ring("s");
    let q = p.q();
    let n = p.supersingular_count() as usize;
    if h.degree() != Some(n) || !kr.is_monic(h) {
        return Err(Error::DenominatorMismatch(format!("h must be monic of degree {n}")));
    }
    let gamma = p.alpha();
    let w = kr.pow(&kr.sub(&kr.monomial(k.one(), q as usize), &kr.x()), q - 1);
    // h(γ/W) = num / W^N
    let mut num = kr.zero();
    for (j, c) in h.coeffs().iter().enumerate() {
        let t = kr.scale(&kr.pow(&w, (n - j) as u64), &k.mul(c, &k.pow(&gamma, j as u64)));
        num = kr.add(&num, &t);
    }
    let den = kr.pow(&w, n as u64);
    let scaled = kr.mul(&num, &den);
    let cancelled = kr
        .div_exact(&scaled, &den)
        .ok_or_else(|| Error::DenominatorMismatch("W^N does not divide the numerator".into()))?;
    let gq_n = k.pow(&gamma, q * n as u64);
    let out = kr.scale(&cancelled, &k.inv(&gq_n).expect("γ ≠ 0"));
    if !kr.is_monic(&out) {
        return Err(Error::DenominatorMismatch(format!(
            "h(0) = {} differs from γ^(qN); h is inconsistent",
            k.render(&kr.coeff(h, 0))
        )));
    }
    Ok(out)
}

/// `h` by the chosen method, together with `H`.
pub fn deuring(p: &PrimeModulus, method: Method) -> Result<DeuringResult> {
    let (h, big_h) = match method {
        Method::Direct => {
            let h = deuring_h_direct(p);
            let big_h = deuring_H(p, &h)?;
            (h, big_h)
        }
        Method::GRecurrence => {
            let h = deuring_h_grec(p)?;
            let big_h = deuring_H(p, &h)?;
            (h, big_h)
        }
        Method::Universal => (deuring_h_universal(p), deuring_big_h_universal(p)),
    };
    Ok(DeuringResult { prime: p.clone(), h, big_h, method })
}
