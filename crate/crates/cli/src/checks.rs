//! The property suites behind `verify` and `identities`.

use serde::Serialize;

use deuring_core::algebra::{FieldElement, FiniteField, PrimeModulus, Ring};
use deuring_core::drinfeld::{
    deuring_H, deuring_big_h_universal, deuring_h_direct, deuring_h_grec, deuring_h_universal, g_coefficients,
    psi_p_symbolic,
};
use deuring_core::isogeny_graph::{build_supersingular_graph, verify_component};
use deuring_core::tower::verify_all;
use deuring_core::universal::{
    check_derivative_recursion, check_key_identity, check_simple_roots, expected_degree, u_sequence, U_sequence,
};
use deuring_core::{Error, Result};

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn primes(fq: &FiniteField, max_degree: u32) -> Vec<PrimeModulus> {
    (1..=max_degree).flat_map(|d| PrimeModulus::all_of_degree(fq, d)).collect()
}

/// Runs `test` on every prime and reports the first failure.
fn over_primes(name: &'static str, ps: &[PrimeModulus], test: impl Fn(&PrimeModulus) -> Result<bool>) -> Result<Check> {
    for p in ps {
        if !test(p)? {
            return Ok(Check { name, passed: false, detail: format!("fails for p = {p}") });
        }
    }
    Ok(Check { name, passed: true, detail: format!("{} primes", ps.len()) })
}

fn setup(q: u64, max_degree: u32) -> Result<FiniteField> {
    if max_degree == 0 {
        return Err(Error::InvalidPrime("--max-degree must be at least 1".into()));
    }
    FiniteField::gf(q)
}

pub fn verify(q: u64, max_degree: u32) -> Result<Vec<Check>> {
    let fq = setup(q, max_degree)?;
    let ps = primes(&fq, max_degree);
    let mut out =
        vec![
            over_primes("h: three methods agree", &ps, |p| {
                let h = deuring_h_direct(p);
                Ok(deuring_h_grec(p)? == h && deuring_h_universal(p) == h)
            })?,
            over_primes("H equals U_d mod p", &ps, |p| {
                Ok(deuring_H(p, &deuring_h_direct(p))? == deuring_big_h_universal(p))
            })?,
            over_primes("h monic, simple roots", &ps, |p| {
                let h = deuring_h_universal(p);
                let kr = p.kappa_ring("s");
                Ok(kr.is_monic(&h) && h.degree() == Some(p.supersingular_count() as usize) && check_simple_roots(p)?)
            })?,
            over_primes("coefficients g_k", &ps, |p| {
                let d = p.degree() as usize;
                let kr = p.kappa_ring("s");
                let g = psi_p_symbolic(p, 2 * d);
                let top: u64 = (0..d as u32).map(|i| p.q().pow(2 * i)).sum();
                let h = deuring_h_direct(p);
                Ok(g[..d].iter().all(|x| x.is_zero())
                    && g[2 * d] == kr.monomial(p.kappa().one(), top as usize)
                    && g_coefficients(p, 2 * d - 1)?[..] == g[..2 * d]
                    && g[d..2 * d].iter().all(|gk| kr.div_exact(gk, &h).is_some()))
            })?,
            over_primes("supersingular component", &ps, |p| {
                Ok(verify_component(&build_supersingular_graph(p)?)?.passed())
            })?,
        ];
    out.extend(identities(q, max_degree)?);
    let reports = verify_all(q)?;
    let failed: Vec<_> = reports.iter().filter(|r| !r.verified).map(|r| r.name).collect();
    out.push(Check {
        name: "tower identities",
        passed: failed.is_empty(),
        detail: if failed.is_empty() { format!("{} identities", reports.len()) } else { failed.join(", ") },
    });
    Ok(out)
}

pub fn identities(q: u64, max_degree: u32) -> Result<Vec<Check>> {
    let fq = setup(q, max_degree)?;
    let n = max_degree as usize;
    let seq = u_sequence(&fq, n);
    let a = seq.ring().base();
    let shape = (0..=n).all(|i| {
        let ui = seq.get(i as isize);
        ui.degree() == Some(expected_degree(q, i as u32) as usize) && seq.ring().is_monic(ui)
    });
    let constants = (0..=n).all(|i| {
        let want = a.monomial(FieldElement::ONE, (q * expected_degree(q, i as u32)) as usize);
        seq.ring().coeff(seq.get(i as isize), 0) == want
    });
    let upper = U_sequence(&fq, n);
    let upper_shape = (1..=n).all(|i| {
        let ui = upper.get(i as isize);
        ui.degree() == Some((q.pow(i as u32 + 1) - q) as usize) && upper.ring().is_monic(ui)
    });
    let key = (0..=n).find(|&i| !check_key_identity(&fq, i));
    let deriv = check_derivative_recursion(&fq, n);
    let range = format!("0 ≤ i ≤ {n}");
    Ok(vec![
        Check { name: "u_i monic of degree", passed: shape, detail: range.clone() },
        Check { name: "u_i(0) power of T", passed: constants, detail: range.clone() },
        Check { name: "U_i monic of degree", passed: upper_shape, detail: format!("1 ≤ i ≤ {n}") },
        Check {
            name: "key identity",
            passed: key.is_none(),
            detail: key.map_or(range.clone(), |i| format!("fails at i = {i}")),
        },
        Check {
            name: "derivative recursion",
            passed: deriv.passed(),
            detail: format!("product rule: {}, same recursion for i ≥ 1: {}", deriv.product_rule, deriv.same_recursion),
        },
    ])
}
