use deuring_core::algebra::parse::parse_poly;
use deuring_core::algebra::{FieldElement, FiniteField, Poly, PolyRing, PrimeModulus, Ring};
use deuring_core::drinfeld::DeltaModule;
use deuring_core::ore::{OrePoly, OreRing};
use proptest::prelude::*;

fn elems(card: u64, max_len: usize) -> impl Strategy<Value = Vec<FieldElement>> {
    prop::collection::vec((0..card as u32).prop_map(FieldElement::from_index), 0..=max_len)
}

fn kappa() -> PrimeModulus {
    PrimeModulus::parse(3, "T^2 + 1").unwrap()
}

fn tpoly(fq: &FiniteField, c: Vec<FieldElement>) -> Poly<FieldElement> {
    PolyRing::new(fq.clone(), "T").from_coeffs(c)
}

proptest! {
    #[test]
    fn frobenius_is_additive(a in 0u32..729, b in 0u32..729, k in 0u32..4) {
        let f3 = FiniteField::gf(3).unwrap();
        let l = FiniteField::extension_of_degree(&f3, 6, "a").unwrap();
        let (a, b) = (FieldElement::from_index(a), FieldElement::from_index(b));
        let lhs = l.frobenius(&l.add(&a, &b), 3, k);
        prop_assert_eq!(lhs, l.add(&l.frobenius(&a, 3, k), &l.frobenius(&b, 3, k)));
        prop_assert_eq!(l.frobenius(&a, 3, 6), a);
    }

    #[test]
    fn polynomial_frobenius_is_multiplicative(f in elems(4, 5), g in elems(4, 5)) {
        let r = PolyRing::new(FiniteField::gf(4).unwrap(), "s");
        let (f, g) = (r.from_coeffs(f), r.from_coeffs(g));
        prop_assert_eq!(r.frobenius(&r.mul(&f, &g), 2, 1), r.mul(&r.frobenius(&f, 2, 1), &r.frobenius(&g, 2, 1)));
        prop_assert_eq!(r.frobenius(&f, 4, 1), r.pow(&f, 4));
    }

    #[test]
    fn reduction_is_a_ring_homomorphism(f in elems(3, 8), g in elems(3, 8)) {
        let p = kappa();
        let k = p.kappa();
        let (f, g) = (tpoly(p.fq(), f), tpoly(p.fq(), g));
        let a = p.tpoly_ring();
        prop_assert_eq!(p.reduce_tpoly(&a.mul(&f, &g)), k.mul(&p.reduce_tpoly(&f), &p.reduce_tpoly(&g)));
        prop_assert_eq!(p.reduce_tpoly(&a.add(&f, &g)), k.add(&p.reduce_tpoly(&f), &p.reduce_tpoly(&g)));
        prop_assert_eq!(p.reduce_tpoly(&a.mul(&f, p.poly())), k.zero());
    }

    #[test]
    fn drinfeld_map_is_a_homomorphism(delta in 1u32..9, a in elems(3, 3), b in elems(3, 3)) {
        let p = kappa();
        let m = DeltaModule::in_characteristic(&p, p.kappa(), FieldElement::from_index(delta)).unwrap();
        let ore = m.ore();
        let (a, b) = (tpoly(p.fq(), a), tpoly(p.fq(), b));
        let ab = p.tpoly_ring().mul(&a, &b);
        let (ia, ib) = (m.image(&a, usize::MAX).unwrap(), m.image(&b, usize::MAX).unwrap());
        prop_assert_eq!(m.image(&ab, usize::MAX).unwrap(), ore.mul(&ia, &ib));
        prop_assert_eq!(ore.mul(&ia, &ib), ore.mul(&ib, &ia));
        if let Some(d) = a.degree() {
            prop_assert_eq!(ia.degree(), Some(2 * d));
        }
    }

    #[test]
    fn ore_multiplication_is_associative(f in elems(16, 4), g in elems(16, 4), h in elems(16, 4)) {
        let f16 = FiniteField::gf(16).unwrap();
        let ore = OreRing::new(f16, 4);
        let (f, g, h): (OrePoly<_>, OrePoly<_>, OrePoly<_>) = (ore.from_coeffs(f), ore.from_coeffs(g), ore.from_coeffs(h));
        prop_assert_eq!(ore.mul(&ore.mul(&f, &g), &h), ore.mul(&f, &ore.mul(&g, &h)));
        prop_assert_eq!(ore.mul(&f, &ore.add(&g, &h)), ore.add(&ore.mul(&f, &g), &ore.mul(&f, &h)));
    }

    #[test]
    fn application_is_additive_and_composes(f in elems(9, 3), g in elems(9, 3), x in 0u32..729, y in 0u32..729) {
        let f9 = FiniteField::gf(9).unwrap();
        let l = FiniteField::extension_of_degree(&f9, 3, "b").unwrap();
        let ore = OreRing::new(f9, 3);
        let (f, g) = (ore.from_coeffs(f), ore.from_coeffs(g));
        let (x, y) = (FieldElement::from_index(x), FieldElement::from_index(y));
        let sum = ore.apply(&f, &l, l.add(&x, &y)).unwrap();
        prop_assert_eq!(sum, l.add(&ore.apply(&f, &l, x).unwrap(), &ore.apply(&f, &l, y).unwrap()));
        let fg = ore.apply(&ore.mul(&f, &g), &l, x).unwrap();
        prop_assert_eq!(fg, ore.apply(&f, &l, ore.apply(&g, &l, x).unwrap()).unwrap());
    }

    #[test]
    fn render_parse_roundtrip(c in elems(4, 6)) {
        let r = PolyRing::new(FiniteField::gf(4).unwrap(), "T");
        let f = r.from_coeffs(c);
        prop_assert_eq!(parse_poly(&r.render(&f), &r).unwrap(), f);
    }
}
