//! Roots of univariate polynomials over finite fields.
//!
//! Fields up to [`TABLE_LIMIT`](super::field::TABLE_LIMIT) elements are
//! scanned exhaustively. Larger fields use `gcd(f, x^Q - x)` followed by
//! randomized equal-degree splitting with a fixed seed.

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{FieldElement, FiniteField, TABLE_LIMIT};
use super::poly::{Poly, PolyRing};
use super::ring::Ring;
use crate::error::Result;

/// Name for the generator of the next extension above `field`.
pub fn next_generator_name(field: &FiniteField) -> String {
    match field.generator_name().as_bytes() {
        [c] if c.is_ascii_lowercase() && *c < b'z' && *c != b'w' => ((c + 1) as char).to_string(),
        _ => "y".to_string(),
    }
}

/// Distinct roots of `f` in its coefficient field, ascending by index.
pub fn distinct_roots(ring: &PolyRing<FiniteField>, f: &Poly<FieldElement>) -> Result<Vec<FieldElement>> {
    let field = ring.base();
    if f.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let mut roots = if field.cardinality() <= TABLE_LIMIT {
        field.elements().filter(|x| field.is_zero(&ring.eval(f, x))).collect()
    } else {
        let x = ring.x();
        let xq = ring.pow_mod(&x, field.cardinality(), f)?;
        let g = ring.gcd(f, &ring.sub(&xq, &x))?;
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut out = Vec::new();
        split_linear(ring, &g, &mut rng, &mut out)?;
        out
    };
    roots.sort();
    Ok(roots)
}

fn split_linear(
    ring: &PolyRing<FiniteField>,
    g: &Poly<FieldElement>,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<FieldElement>,
) -> Result<()> {
    let field = ring.base();
    match g.degree() {
        None | Some(0) => return Ok(()),
        Some(1) => {
            let g = ring.monic(g);
            out.push(field.neg(&g.coeffs()[0]));
            return Ok(());
        }
        _ => {}
    }
    let card = field.cardinality();
    loop {
        let r = FieldElement::from_index(rng.gen_range(0..card) as u32);
        let probe = if field.p() == 2 {
            // absolute trace of r*x
            let mut t = ring.rem(&ring.constant(r), g)?;
            t = ring.mul_mod(&t, &ring.x(), g)?;
            let mut acc = t.clone();
            for _ in 1..field.degree() {
                t = ring.mul_mod(&t, &t, g)?;
                acc = ring.add(&acc, &t);
            }
            acc
        } else {
            let lin = ring.from_coeffs(vec![r, FieldElement::ONE]);
            let h = ring.pow_mod(&lin, (card - 1) / 2, g)?;
            ring.sub(&h, &ring.one())
        };
        if probe.is_zero() {
            continue;
        }
        let h = ring.gcd(g, &probe)?;
        let dh = h.degree().unwrap_or(0);
        if dh > 0 && dh < g.degree().unwrap() {
            let rest = ring.div_exact(g, &h).expect("gcd divides");
            split_linear(ring, &h, rng, out)?;
            split_linear(ring, &rest, rng, out)?;
            return Ok(());
        }
    }
}

/// Roots of `f` in its coefficient field, each repeated by multiplicity.
pub fn roots_with_multiplicity(ring: &PolyRing<FiniteField>, f: &Poly<FieldElement>) -> Result<Vec<FieldElement>> {
    let field = ring.base();
    let mut out = Vec::new();
    for r in distinct_roots(ring, f)? {
        let lin = ring.from_coeffs(vec![field.neg(&r), FieldElement::ONE]);
        let mut g = f.clone();
        while let Some(q) = ring.div_exact(&g, &lin) {
            out.push(r);
            g = q;
        }
    }
    Ok(out)
}

/// Lifts a polynomial over a subfield of `target`'s tower into `target`.
pub fn lift(f: &Poly<FieldElement>, target: &PolyRing<FiniteField>) -> Poly<FieldElement> {
    target.from_coeffs(f.coeffs().to_vec())
}

/// All roots (with multiplicity) of `f`, given over `ring.base()`, lying in
/// the degree-`m` extension of that field. Returns the extension as well.
pub fn roots_in_extension(
    ring: &PolyRing<FiniteField>,
    f: &Poly<FieldElement>,
    m: u32,
) -> Result<(FiniteField, Vec<FieldElement>)> {
    let base = ring.base();
    let ext =
        if m == 1 { base.clone() } else { FiniteField::extension_of_degree(base, m, &next_generator_name(base))? };
    let er = PolyRing::new(ext.clone(), ring.var_name());
    let roots = roots_with_multiplicity(&er, &lift(f, &er))?;
    Ok((ext, roots))
}

/// Degree over the coefficient field of the splitting field of `f`: the lcm
/// of the degrees of its irreducible factors (distinct-degree factorization).
pub fn splitting_degree(ring: &PolyRing<FiniteField>, f: &Poly<FieldElement>) -> Result<u32> {
    let card = ring.base().cardinality();
    let x = ring.x();
    let mut rest = ring.monic(f);
    let mut xp = x.clone();
    let mut lcm = 1u32;
    let mut k = 0u32;
    while rest.degree().unwrap_or(0) > 0 {
        k += 1;
        xp = ring.pow_mod(&xp, card, &rest)?;
        let diff = ring.sub(&xp, &x);
        let mut g = ring.gcd(&rest, &diff)?;
        if g.degree().unwrap_or(0) > 0 {
            lcm = lcm.lcm(&k);
            while g.degree().unwrap_or(0) > 0 {
                rest = ring.div_exact(&rest, &g).expect("gcd divides");
                g = ring.gcd(&rest, &g)?;
            }
            xp = ring.rem(&xp, &rest)?;
        }
    }
    Ok(lcm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(r: &PolyRing<FiniteField>, c: &[u32]) -> Poly<FieldElement> {
        r.from_coeffs(c.iter().map(|&i| FieldElement::from_index(i)).collect())
    }

    #[test]
    fn small_examples() {
        let r = PolyRing::new(FiniteField::gf(2).unwrap(), "s");
        let roots = roots_with_multiplicity(&r, &p(&r, &[0, 1, 1])).unwrap();
        assert_eq!(roots, vec![FieldElement::ZERO, FieldElement::ONE]);
        let f = p(&r, &[1, 1, 1]);
        assert!(roots_with_multiplicity(&r, &f).unwrap().is_empty());
        let (ext, roots) = roots_in_extension(&r, &f, 2).unwrap();
        assert_eq!(ext.cardinality(), 4);
        assert_eq!(roots.len(), 2);
        for x in roots {
            assert_eq!(ext.mul(&x, &ext.mul(&x, &x)), ext.one());
        }
    }

    #[test]
    fn multiplicity_counts() {
        let r = PolyRing::new(FiniteField::gf(3).unwrap(), "s");
        // (s - 1)^3 (s + 1)
        let l1 = p(&r, &[2, 1]);
        let l2 = p(&r, &[1, 1]);
        let f = r.mul(&r.pow(&l1, 3), &l2);
        let roots = roots_with_multiplicity(&r, &f).unwrap();
        assert_eq!(roots, vec![FieldElement::ONE, FieldElement::ONE, FieldElement::ONE, FieldElement::from_index(2)]);
    }

    #[test]
    fn splitting_degree_is_lcm() {
        let r = PolyRing::new(FiniteField::gf(2).unwrap(), "s");
        // (s^2 + s + 1)(s^3 + s + 1) splits over F_{2^6}
        let f = r.mul(&p(&r, &[1, 1, 1]), &p(&r, &[1, 1, 0, 1]));
        assert_eq!(splitting_degree(&r, &f).unwrap(), 6);
        assert_eq!(splitting_degree(&r, &p(&r, &[0, 1, 1])).unwrap(), 1);
        // repeated factor
        let g = r.pow(&p(&r, &[1, 1, 1]), 2);
        assert_eq!(splitting_degree(&r, &g).unwrap(), 2);
    }

    #[test]
    fn splitting_path_matches_exhaustive() {
        // GF(2^17) exceeds the table limit, exercising equal-degree splitting
        let f2 = FiniteField::gf(2).unwrap();
        let big = FiniteField::extension_of_degree(&f2, 17, "b").unwrap();
        let r = PolyRing::new(big.clone(), "s");
        let xs: Vec<FieldElement> = [3u32, 77, 1000, 65537].iter().map(|&i| FieldElement::from_index(i)).collect();
        let mut f = r.one();
        for x in &xs {
            f = r.mul(&f, &r.from_coeffs(vec![*x, FieldElement::ONE]));
        }
        // add an irreducible quadratic factor with no roots
        let quad = r.from_coeffs(vec![FieldElement::from_index(5), FieldElement::ONE, FieldElement::ONE]);
        if splitting_degree(&r, &quad).unwrap() == 2 {
            f = r.mul(&f, &quad);
        }
        let roots = roots_with_multiplicity(&r, &f).unwrap();
        let mut want = xs.clone();
        want.sort();
        assert_eq!(roots, want);

        let f3 = FiniteField::gf(3).unwrap();
        let big3 = FiniteField::extension_of_degree(&f3, 11, "b").unwrap();
        let r3 = PolyRing::new(big3, "s");
        let g = r3.mul(
            &r3.from_coeffs(vec![FieldElement::from_index(12345), FieldElement::ONE]),
            &r3.from_coeffs(vec![FieldElement::from_index(2), FieldElement::ONE]),
        );
        assert_eq!(roots_with_multiplicity(&r3, &g).unwrap().len(), 2);
    }
}
