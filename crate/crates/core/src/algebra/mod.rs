//! Exact arithmetic: finite-field towers, univariate polynomials, Laurent
//! coefficients in `T`, sparse multivariate polynomials, and the text grammar.

pub mod field;
pub mod laurent;
pub mod multipoly;
pub mod parse;
pub mod poly;
pub mod prime;
pub mod ring;
pub mod roots;

pub use field::{FieldElement, FiniteField};
pub use laurent::{Laurent, LaurentRing};
pub use multipoly::{MultiPoly, MultiRing};
pub use poly::{Poly, PolyRing};
pub use prime::PrimeModulus;
pub use ring::{Field, Ring};

/// `F_q[T]`.
pub type TPoly = Poly<FieldElement>;

/// `x^(q^k)` for an element of a constructed field.
pub fn frobenius(field: &FiniteField, x: FieldElement, q: u64, k: u32) -> FieldElement {
    field.frobenius(&x, q, k)
}
