//! The directed correspondence graph on supersingular Δ-invariants.
//!
//! `Δ0` is joined to `Δ1` when, for some `Y`,
//! `Δ0 = −γ(T^q)(Y+1)^(q−1)Y` and `Δ1 = −γ(T)Y^q/(Y+1)^(q−1)`.
//! For each `Δ0` the `Y`-equation has degree `q`; edges are counted with the
//! multiplicity of the corresponding root, so out-degrees are exactly `q`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_integer::Integer;
use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::algebra::roots::{next_generator_name, roots_with_multiplicity, splitting_degree};
use crate::algebra::{Field, FieldElement, FiniteField, Poly, PolyRing, PrimeModulus, Ring};
use crate::drinfeld::deuring_h_universal;
use crate::error::{Error, Result};

/// `(γ, γ^q)` embedded in `ambient`.
fn gammas(p: &PrimeModulus, ambient: &FiniteField) -> Result<(FieldElement, FieldElement)> {
    let g = ambient.embed(p.alpha(), p.kappa())?;
    Ok((g, ambient.pow(&g, p.q())))
}

/// `−γ^q (Y+1)^(q−1) Y − Δ0`.
fn forward_poly(p: &PrimeModulus, ring: &PolyRing<FiniteField>, delta0: FieldElement) -> Result<Poly<FieldElement>> {
    let l = ring.base();
    let (_, gq) = gammas(p, l)?;
    let y1 = ring.from_coeffs(vec![l.one(), l.one()]);
    let lhs = ring.scale(&ring.mul(&ring.pow(&y1, p.q() - 1), &ring.x()), &l.neg(&gq));
    Ok(ring.sub(&lhs, &ring.constant(delta0)))
}

/// `γ Y^q + Δ1 (Y+1)^(q−1)`, whose roots give the `Y` mapping to `Δ1`.
fn backward_poly(p: &PrimeModulus, ring: &PolyRing<FiniteField>, delta1: FieldElement) -> Result<Poly<FieldElement>> {
    let l = ring.base();
    let (g, _) = gammas(p, l)?;
    let y1 = ring.from_coeffs(vec![l.one(), l.one()]);
    Ok(ring.add(&ring.monomial(g, p.q() as usize), &ring.scale(&ring.pow(&y1, p.q() - 1), &delta1)))
}

fn delta0_of(p: &PrimeModulus, l: &FiniteField, y: FieldElement) -> Result<FieldElement> {
    let (_, gq) = gammas(p, l)?;
    let y1 = l.add(&y, &l.one());
    Ok(l.neg(&l.mul(&gq, &l.mul(&l.pow(&y1, p.q() - 1), &y))))
}

fn delta1_of(p: &PrimeModulus, l: &FiniteField, y: FieldElement) -> Result<FieldElement> {
    let (g, _) = gammas(p, l)?;
    let y1 = l.add(&y, &l.one());
    let num = l.neg(&l.mul(&g, &l.pow(&y, p.q())));
    l.div(&num, &l.pow(&y1, p.q() - 1)).ok_or(Error::DivisionByZero)
}

fn roots_or_too_small(ring: &PolyRing<FiniteField>, f: &Poly<FieldElement>, q: u64) -> Result<Vec<FieldElement>> {
    let roots = roots_with_multiplicity(ring, f)?;
    if roots.len() < q as usize {
        return Err(Error::AmbientTooSmall { found: roots.len(), expected: q as usize });
    }
    Ok(roots)
}

/// The `q` values `Δ1` adjacent to `Δ0`, with multiplicity.
pub fn neighbors(delta0: FieldElement, p: &PrimeModulus, ambient: &FiniteField) -> Result<Vec<FieldElement>> {
    if delta0 == FieldElement::ZERO {
        return Err(Error::ZeroDelta);
    }
    let ring = PolyRing::new(ambient.clone(), "Y");
    let f = forward_poly(p, &ring, delta0)?;
    let ys = roots_or_too_small(&ring, &f, p.q())?;
    let mut out = ys.into_iter().map(|y| delta1_of(p, ambient, y)).collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// The `q` values `Δ0` joined to `Δ1`, with multiplicity.
pub fn predecessors(delta1: FieldElement, p: &PrimeModulus, ambient: &FiniteField) -> Result<Vec<FieldElement>> {
    if delta1 == FieldElement::ZERO {
        return Err(Error::ZeroDelta);
    }
    let ring = PolyRing::new(ambient.clone(), "Y");
    let f = backward_poly(p, &ring, delta1)?;
    let ys = roots_or_too_small(&ring, &f, p.q())?;
    let mut out = ys.into_iter().map(|y| delta0_of(p, ambient, y)).collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// `(Δ0 + γ^q)^(q+1) Δ1 = (Δ1 + γ)^(q+1) Δ0^q`.
pub fn relation_holds(p: &PrimeModulus, l: &FiniteField, d0: FieldElement, d1: FieldElement) -> Result<bool> {
    let (g, gq) = gammas(p, l)?;
    let q = p.q();
    let lhs = l.mul(&l.pow(&l.add(&d0, &gq), q + 1), &d1);
    let rhs = l.mul(&l.pow(&l.add(&d1, &g), q + 1), &l.pow(&d0, q));
    Ok(lhs == rhs)
}

#[derive(Clone, Debug)]
pub struct IsogenyGraph {
    pub prime: PrimeModulus,
    pub ambient: FiniteField,
    /// Roots of `h_{p(T)}`, ascending.
    pub vertices: Vec<FieldElement>,
    /// `(Δ0, Δ1) ↦ multiplicity`.
    pub edges: BTreeMap<(FieldElement, FieldElement), u32>,
    /// Degree over `κ` of the splitting field of `h`.
    pub splitting_degree: u32,
}

impl IsogenyGraph {
    /// Degree of the ambient field over `F_q`.
    pub fn ambient_degree(&self) -> u32 {
        self.ambient.degree() / self.prime.fq().degree()
    }

    pub fn edge_count(&self) -> u32 {
        self.edges.values().sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let l = &self.ambient;
        let vertices: Vec<_> = self.vertices.iter().map(|v| l.render(v)).collect();
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|((a, b), m)| serde_json::json!({"from": l.render(a), "to": l.render(b), "multiplicity": m}))
            .collect();
        serde_json::json!({
            "q": self.prime.q(),
            "p": self.prime.to_string(),
            "ambient_degree": self.ambient_degree(),
            "ambient_generator": l.generator_name(),
            "vertices": vertices,
            "edges": edges,
        })
    }

    pub fn to_dot(&self) -> String {
        let l = &self.ambient;
        let idx: BTreeMap<_, _> = self.vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut out = String::from("digraph supersingular {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  v{i} [label=\"{}\"];", l.render(v));
        }
        for ((a, b), m) in &self.edges {
            let name =
                |x: &FieldElement| idx.get(x).map_or_else(|| format!("\"{}\"", l.render(x)), |i| format!("v{i}"));
            let label = if *m > 1 { format!(" [label=\"{m}\"]") } else { String::new() };
            let _ = writeln!(out, "  {} -> {}{label};", name(a), name(b));
        }
        out.push_str("}\n");
        out
    }
}

fn extend(base: &FiniteField, m: u32) -> Result<FiniteField> {
    FiniteField::extension_of_degree(base, m, &next_generator_name(base))
}

/// Vertices are the roots of `h_{p(T)}` in its splitting field over `κ`; the
/// ambient field grows until every neighbor polynomial splits.
pub fn build_supersingular_graph(p: &PrimeModulus) -> Result<IsogenyGraph> {
    let kr = p.kappa_ring("s");
    let h = deuring_h_universal(p);
    let m = splitting_degree(&kr, &h)?;
    let mut ambient = if m == 1 { p.kappa().clone() } else { extend(p.kappa(), m)? };
    let mut vertices = {
        let r = PolyRing::new(ambient.clone(), "s");
        roots_with_multiplicity(&r, &r.from_coeffs(h.coeffs().to_vec()))?
    };
    'outer: loop {
        let mut edges = BTreeMap::new();
        for &v in &vertices {
            let targets = match neighbors(v, p, &ambient).and_then(|n| {
                predecessors(v, p, &ambient)?;
                Ok(n)
            }) {
                Ok(n) => n,
                Err(Error::AmbientTooSmall { .. }) => {
                    let ring = PolyRing::new(ambient.clone(), "Y");
                    let fwd = splitting_degree(&ring, &forward_poly(p, &ring, v)?)?;
                    let bwd = splitting_degree(&ring, &backward_poly(p, &ring, v)?)?;
                    let grow = fwd.lcm(&bwd);
                    let bigger = extend(&ambient, grow)?;
                    vertices = vertices.iter().map(|x| bigger.embed(*x, &ambient)).collect::<Result<_>>()?;
                    vertices.sort();
                    ambient = bigger;
                    continue 'outer;
                }
                Err(e) => return Err(e),
            };
            for t in targets {
                *edges.entry((v, t)).or_insert(0) += 1;
            }
        }
        return Ok(IsogenyGraph { prime: p.clone(), ambient, vertices, edges, splitting_degree: m });
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub size: usize,
    pub expected_size: u64,
    /// out-degree ↦ number of vertices
    pub out_degrees: BTreeMap<u32, usize>,
    pub in_degrees: BTreeMap<u32, usize>,
    pub regular: bool,
    /// Every edge target is a vertex and every predecessor of a vertex is one.
    pub closed: bool,
    /// Connected as an undirected multigraph.
    pub connected: bool,
    /// Every edge satisfies the modular relation between `Δ0` and `Δ1`.
    pub relation_holds: bool,
    /// Edges of multiplicity above one.
    pub collisions: usize,
    pub ambient_degree: u32,
    /// Observation only: whether all vertices lie in `F_(q^(2d))`.
    pub vertices_in_q_2d: bool,
}

impl ComponentReport {
    pub fn passed(&self) -> bool {
        self.size as u64 == self.expected_size && self.regular && self.closed && self.connected && self.relation_holds
    }
}

pub fn verify_component(g: &IsogenyGraph) -> Result<ComponentReport> {
    let q = g.prime.q() as u32;
    let index: BTreeMap<_, _> = g.vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut out = vec![0u32; g.vertices.len()];
    let mut inn = vec![0u32; g.vertices.len()];
    let mut closed = true;
    let mut relation = true;
    let mut components = UnionFind::new(g.vertices.len());
    for (&(a, b), &m) in &g.edges {
        let ia = index[&a];
        out[ia] += m;
        relation &= relation_holds(&g.prime, &g.ambient, a, b)?;
        match index.get(&b) {
            Some(&ib) => {
                inn[ib] += m;
                components.union(ia, ib);
            }
            None => closed = false,
        }
    }
    for &v in &g.vertices {
        closed &= predecessors(v, &g.prime, &g.ambient)?.iter().all(|x| index.contains_key(x));
    }
    let histogram = |d: &[u32]| {
        let mut h = BTreeMap::new();
        for &x in d {
            *h.entry(x).or_insert(0) += 1;
        }
        h
    };
    let roots: std::collections::BTreeSet<_> = components.into_labeling().into_iter().collect();
    Ok(ComponentReport {
        size: g.vertices.len(),
        expected_size: g.prime.supersingular_count(),
        out_degrees: histogram(&out),
        in_degrees: histogram(&inn),
        regular: out.iter().all(|&d| d == q),
        closed,
        connected: roots.len() == 1,
        relation_holds: relation,
        collisions: g.edges.values().filter(|&&m| m > 1).count(),
        ambient_degree: g.ambient_degree(),
        vertices_in_q_2d: 2 % g.splitting_degree == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drinfeld::DeltaModule;

    #[test]
    fn q2_d2_component() {
        let p = PrimeModulus::parse(2, "T^2 + T + 1").unwrap();
        let g = build_supersingular_graph(&p).unwrap();
        assert_eq!(g.vertices.len(), 3);
        assert_eq!(g.edge_count(), 6);
        let r = verify_component(&g).unwrap();
        assert_eq!(r.out_degrees, BTreeMap::from([(2, 3)]));
        assert!(r.closed && r.connected && r.relation_holds && r.passed());
        assert_eq!(r.size, 3);
        for &v in &g.vertices {
            assert_ne!(v, FieldElement::ZERO);
        }
    }

    #[test]
    fn degree_one_prime_has_only_loops() {
        let p = PrimeModulus::parse(3, "T - 1").unwrap();
        let g = build_supersingular_graph(&p).unwrap();
        assert_eq!(g.vertices.len(), 1);
        let v = g.vertices[0];
        assert_eq!(g.edges.keys().collect::<Vec<_>>(), vec![&(v, v)]);
        assert_eq!(g.edge_count(), 3);
        assert!(verify_component(&g).unwrap().passed());
    }

    #[test]
    fn larger_components() {
        for (q, src) in [(2, "T^3 + T + 1"), (3, "T^2 + 1"), (4, "T^2 + T + x"), (5, "T^2 + 2")] {
            let p = PrimeModulus::parse(q, src).unwrap();
            let g = build_supersingular_graph(&p).unwrap();
            let r = verify_component(&g).unwrap();
            assert!(r.passed(), "{q} {src}: {r:?}");
        }
    }

    #[test]
    fn ordinary_neighbors_stay_ordinary() {
        let p = PrimeModulus::parse(2, "T^2 + T + 1").unwrap();
        let ambient = FiniteField::extension_of_degree(p.kappa(), 4, "b").unwrap();
        let mut checked = 0;
        for d0 in ambient.elements().skip(1).step_by(5) {
            let Ok(ns) = neighbors(d0, &p, &ambient) else { continue };
            let ss0 = DeltaModule::in_characteristic(&p, &ambient, d0).unwrap().is_supersingular(&p).unwrap();
            for d1 in ns {
                assert!(relation_holds(&p, &ambient, d0, d1).unwrap());
                let ss1 = DeltaModule::in_characteristic(&p, &ambient, d1).unwrap().is_supersingular(&p).unwrap();
                assert_eq!(ss0, ss1);
                checked += 1;
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn ambient_too_small_is_reported() {
        let p = PrimeModulus::parse(2, "T^2 + T + 1").unwrap();
        let k = p.kappa();
        // some Δ0 in κ has an irreducible Y-quadratic over κ
        let hit = k
            .elements()
            .skip(1)
            .any(|d| matches!(neighbors(d, &p, k), Err(Error::AmbientTooSmall { expected: 2, .. })));
        assert!(hit);
        assert_eq!(neighbors(FieldElement::ZERO, &p, k), Err(Error::ZeroDelta));
    }

    #[test]
    fn exports() {
        let p = PrimeModulus::parse(2, "T^2 + T + 1").unwrap();
        let g = build_supersingular_graph(&p).unwrap();
        let v = g.to_json();
        assert_eq!(v["vertices"].as_array().unwrap().len(), 3);
        let total: u64 = v["edges"].as_array().unwrap().iter().map(|e| e["multiplicity"].as_u64().unwrap()).sum();
        assert_eq!(total, 6);
        let dot = g.to_dot();
        assert!(dot.starts_with("digraph"));
        assert_eq!(dot.matches("->").count(), g.edges.len());
    }
}
