//! Twisted polynomial rings `R{τ}` with `τ·a = a^q·τ`.
//!
//! The twist is the `q`-power Frobenius of the coefficient ring. Over `κ[Δ]`
//! (a [`PolyRing`](crate::algebra::PolyRing) over a field) this raises the
//! `κ`-coefficients to the `q` and sends `Δ ↦ Δ^q`; over `A[Δ]` it also sends
//! `T ↦ T^q`. Rank-2 Drinfeld modules are realized through
//! [`OreRing::drinfeld_image`].

use crate::algebra::{FieldElement, FiniteField, Ring};
use crate::error::{Error, Result};

/// `Σ c_k τ^k`, ascending, no trailing zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrePoly<E> {
    coeffs: Vec<E>,
}

impl<E> OrePoly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct OreRing<R: Ring> {
    base: R,
    q: u64,
}

impl<R: Ring> OreRing<R> {
    /// `q` must be a power of the characteristic of `base`.
    pub fn new(base: R, q: u64) -> Self {
        debug_assert!({
            let p = base.characteristic();
            let mut r = q;
            while r.is_multiple_of(p) {
                r /= p;
            }
            r == 1
        });
        OreRing { base, q }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `σ^k(a) = a^(q^k)`.
    pub fn twist(&self, a: &R::Elem, k: u32) -> R::Elem {
        if k == 0 {
            a.clone()
        } else {
            self.base.frobenius(a, self.q, k)
        }
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<R::Elem>) -> OrePoly<R::Elem> {
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
        OrePoly { coeffs }
    }

    pub fn zero(&self) -> OrePoly<R::Elem> {
        OrePoly { coeffs: Vec::new() }
    }

    pub fn one(&self) -> OrePoly<R::Elem> {
        self.constant(self.base.one())
    }

    pub fn constant(&self, c: R::Elem) -> OrePoly<R::Elem> {
        self.from_coeffs(vec![c])
    }

    /// `τ`.
    pub fn tau(&self) -> OrePoly<R::Elem> {
        self.from_coeffs(vec![self.base.zero(), self.base.one()])
    }

    pub fn coeff(&self, f: &OrePoly<R::Elem>, k: usize) -> R::Elem {
        f.coeffs.get(k).cloned().unwrap_or_else(|| self.base.zero())
    }

    pub fn add(&self, f: &OrePoly<R::Elem>, g: &OrePoly<R::Elem>) -> OrePoly<R::Elem> {
        let n = f.coeffs.len().max(g.coeffs.len());
        self.from_coeffs((0..n).map(|k| self.base.add(&self.coeff(f, k), &self.coeff(g, k))).collect())
    }

    pub fn neg(&self, f: &OrePoly<R::Elem>) -> OrePoly<R::Elem> {
        OrePoly { coeffs: f.coeffs.iter().map(|c| self.base.neg(c)).collect() }
    }

    pub fn sub(&self, f: &OrePoly<R::Elem>, g: &OrePoly<R::Elem>) -> OrePoly<R::Elem> {
        self.add(f, &self.neg(g))
    }

    /// Left scalar multiple `c·f`.
    pub fn scale(&self, c: &R::Elem, f: &OrePoly<R::Elem>) -> OrePoly<R::Elem> {
        self.from_coeffs(f.coeffs.iter().map(|x| self.base.mul(c, x)).collect())
    }

    /// Product with `(f·g)_k = Σ_{i+j=k} f_i σ^i(g_j)`.
    pub fn mul(&self, f: &OrePoly<R::Elem>, g: &OrePoly<R::Elem>) -> OrePoly<R::Elem> {
        self.mul_truncated(f, g, usize::MAX)
    }

    /// `f·g` with all terms of τ-degree above `max_degree` dropped.
    pub fn mul_truncated(&self, f: &OrePoly<R::Elem>, g: &OrePoly<R::Elem>, max_degree: usize) -> OrePoly<R::Elem> {
        if f.is_zero() || g.is_zero() {
            return self.zero();
        }
        let len = (f.coeffs.len() + g.coeffs.len() - 1).min(max_degree.saturating_add(1));
        let mut out = vec![self.base.zero(); len];
        for (i, fi) in f.coeffs.iter().enumerate().take(len) {
            if self.base.is_zero(fi) {
                continue;
            }
            for (j, gj) in g.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if self.base.is_zero(gj) {
                    continue;
                }
                let t = self.base.mul(fi, &self.twist(gj, i as u32));
                out[i + j] = self.base.add(&out[i + j], &t);
            }
        }
        self.from_coeffs(out)
    }

    pub fn pow(&self, f: &OrePoly<R::Elem>, n: u32) -> OrePoly<R::Elem> {
        (0..n).fold(self.one(), |acc, _| self.mul(&acc, f))
    }

    /// Image of `a(T) = Σ a_i T^i` under the `F_q`-algebra map `T ↦ ψ_T`.
    /// The scalars `a_i` must already be embedded in the coefficient ring.
    pub fn drinfeld_image(&self, psi_t: &OrePoly<R::Elem>, scalars: &[R::Elem]) -> OrePoly<R::Elem> {
        self.drinfeld_image_truncated(psi_t, scalars, usize::MAX)
    }

    /// [`drinfeld_image`](Self::drinfeld_image) keeping only τ-degrees up to `max_degree`.
    pub fn drinfeld_image_truncated(
        &self,
        psi_t: &OrePoly<R::Elem>,
        scalars: &[R::Elem],
        max_degree: usize,
    ) -> OrePoly<R::Elem> {
        let mut acc = self.zero();
        let mut power = self.one();
        for (i, a) in scalars.iter().enumerate() {
            if i > 0 {
                power = self.mul_truncated(&power, psi_t, max_degree);
            }
            if !self.base.is_zero(a) {
                acc = self.add(&acc, &self.scale(a, &power));
            }
        }
        acc
    }

    /// `c_n*t^n + ... + c_0`, `t` standing for τ.
    pub fn render(&self, f: &OrePoly<R::Elem>) -> String {
        let mut terms = Vec::new();
        for (k, c) in f.coeffs.iter().enumerate().rev() {
            if self.base.is_zero(c) {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
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

impl OreRing<FiniteField> {
    /// Value of the additive polynomial `Σ c_k x^(q^k)` at `x ∈ ext`, where
    /// `ext` contains the coefficient field.
    pub fn apply(&self, f: &OrePoly<FieldElement>, ext: &FiniteField, x: FieldElement) -> Result<FieldElement> {
        if !ext.contains_subfield(&self.base) {
            return Err(Error::ContextMismatch);
        }
        let mut acc = ext.zero();
        let mut xk = x;
        for (k, c) in f.coeffs.iter().enumerate() {
            if k > 0 {
                xk = ext.pow(&xk, self.q);
            }
            acc = ext.add(&acc, &ext.mul(c, &xk));
        }
        Ok(acc)
    }
}
