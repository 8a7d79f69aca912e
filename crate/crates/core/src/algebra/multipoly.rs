//! Sparse multivariate polynomials over a finite field, used for exact
//! identity checks.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use super::field::{FieldElement, FiniteField};
use super::ring::{Field, Ring};

/// Exponent vector -> nonzero coefficient. Keys are compared lexicographically,
/// which is also the monomial order used by [`MultiRing::div_exact`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Vec<u32>, FieldElement>,
}

impl MultiPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &FieldElement)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }
}

/// `F_q[v_0, ..., v_{n-1}]` with named variables; the declaration order is
/// the priority order for graded-lexicographic output.
#[derive(Clone, Debug)]
pub struct MultiRing {
    field: FiniteField,
    vars: Arc<[String]>,
}

impl MultiRing {
    pub fn new(field: FiniteField, vars: &[&str]) -> Self {
        MultiRing { field, vars: vars.iter().map(|v| v.to_string()).collect() }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn constant(&self, c: FieldElement) -> MultiPoly {
        self.term(c, &vec![0; self.nvars()])
    }

    pub fn term(&self, c: FieldElement, exps: &[u32]) -> MultiPoly {
        let mut terms = BTreeMap::new();
        if c.index() != 0 {
            terms.insert(exps.to_vec(), c);
        }
        MultiPoly { terms }
    }

    /// The `i`-th variable.
    pub fn var(&self, i: usize) -> MultiPoly {
        let mut e = vec![0; self.nvars()];
        e[i] = 1;
        self.term(FieldElement::ONE, &e)
    }

    /// Variable by name; panics on an unknown name.
    pub fn v(&self, name: &str) -> MultiPoly {
        self.var(self.var_index(name).unwrap_or_else(|| panic!("unknown variable {name}")))
    }

    pub fn scale(&self, f: &MultiPoly, c: &FieldElement) -> MultiPoly {
        if c.index() == 0 {
            return MultiPoly::default();
        }
        MultiPoly { terms: f.terms.iter().map(|(k, v)| (k.clone(), self.field.mul(v, c))).collect() }
    }

    pub fn degree_in(&self, f: &MultiPoly, var: usize) -> Option<u32> {
        f.terms.keys().map(|k| k[var]).max()
    }

    pub fn total_degree(&self, f: &MultiPoly) -> Option<u32> {
        f.terms.keys().map(|k| k.iter().sum()).max()
    }

    fn add_term(&self, terms: &mut BTreeMap<Vec<u32>, FieldElement>, k: Vec<u32>, c: FieldElement) {
        use std::collections::btree_map::Entry;
        match terms.entry(k) {
            Entry::Vacant(e) => {
                if c.index() != 0 {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                let s = self.field.add(e.get(), &c);
                if s.index() == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Evaluates by substituting `values[i]` for variable `i` in any ring that
    /// receives the coefficients through `coeff`.
    pub fn eval<R: Ring>(
        &self,
        f: &MultiPoly,
        target: &R,
        values: &[R::Elem],
        coeff: impl Fn(&FieldElement) -> R::Elem,
    ) -> R::Elem {
        assert_eq!(values.len(), self.nvars());
        // cache powers per variable
        let mut powers: Vec<Vec<R::Elem>> = vec![vec![target.one()]; self.nvars()];
        let mut acc = target.zero();
        for (k, c) in &f.terms {
            let mut t = coeff(c);
            for (i, &e) in k.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = target.mul(powers[i].last().unwrap(), &values[i]);
                    powers[i].push(next);
                }
                if e > 0 {
                    t = target.mul(&t, &powers[i][e as usize]);
                }
            }
            acc = target.add(&acc, &t);
        }
        acc
    }

    /// `f / g` if `g` divides `f` exactly.
    pub fn div_exact(&self, f: &MultiPoly, g: &MultiPoly) -> Option<MultiPoly> {
        let (glead, gc) = g.terms.iter().next_back()?;
        let ginv = self.field.inv(gc)?;
        let mut r = f.clone();
        let mut quot = MultiPoly::default();
        while let Some((rk, rc)) = r.terms.iter().next_back() {
            if rk.iter().zip(glead).any(|(a, b)| a < b) {
                return None;
            }
            let ek: Vec<u32> = rk.iter().zip(glead).map(|(a, b)| a - b).collect();
            let c = self.field.mul(rc, &ginv);
            let t = self.term(c, &ek);
            r = self.sub(&r, &self.mul(&t, g));
            self.add_term(&mut quot.terms, ek, c);
        }
        Some(quot)
    }

    fn grlex(&self, a: &[u32], b: &[u32]) -> Ordering {
        let da: u32 = a.iter().sum();
        let db: u32 = b.iter().sum();
        da.cmp(&db).then_with(|| a.cmp(b))
    }
}

impl Ring for MultiRing {
    type Elem = MultiPoly;

    fn zero(&self) -> MultiPoly {
        MultiPoly::default()
    }

    fn one(&self) -> MultiPoly {
        self.constant(FieldElement::ONE)
    }

    fn is_zero(&self, a: &MultiPoly) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        let (big, small) = if a.terms.len() >= b.terms.len() { (a, b) } else { (b, a) };
        let mut terms = big.terms.clone();
        for (k, c) in &small.terms {
            self.add_term(&mut terms, k.clone(), *c);
        }
        MultiPoly { terms }
    }

    fn neg(&self, a: &MultiPoly) -> MultiPoly {
        MultiPoly { terms: a.terms.iter().map(|(k, v)| (k.clone(), self.field.neg(v))).collect() }
    }

    fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        let mut terms = BTreeMap::new();
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                let k: Vec<u32> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
                self.add_term(&mut terms, k, self.field.mul(ca, cb));
            }
        }
        MultiPoly { terms }
    }

    fn integer(&self, n: i64) -> MultiPoly {
        self.constant(self.field.integer(n))
    }

    fn characteristic(&self) -> u64 {
        self.field.p()
    }

    fn frobenius(&self, a: &MultiPoly, q: u64, k: u32) -> MultiPoly {
        let step = q.pow(k) as u32;
        MultiPoly {
            terms: a
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| x * step).collect(), self.field.frobenius(c, q, k)))
                .collect(),
        }
    }

    /// Terms in descending graded-lexicographic order.
    fn render(&self, a: &MultiPoly) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut keys: Vec<&Vec<u32>> = a.terms.keys().collect();
        keys.sort_by(|x, y| self.grlex(y, x));
        keys.iter()
            .map(|k| {
                let c = a.terms[*k];
                let mono: Vec<String> = k
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { self.vars[i].clone() } else { format!("{}^{}", self.vars[i], e) })
                    .collect();
                let coeff = self.field.render(&c);
                if mono.is_empty() {
                    coeff
                } else if c.index() == 1 {
                    mono.join("*")
                } else if coeff.contains(' ') {
                    format!("({coeff})*{}", mono.join("*"))
                } else {
                    format!("{coeff}*{}", mono.join("*"))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}
