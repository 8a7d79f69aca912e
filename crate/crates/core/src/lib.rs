//! Deuring polynomials for rank-2 Drinfeld modules in Legendre form.
//!
//! The supersingular Δ-invariants in characteristic `p(T)` are computed three
//! ways: by expanding `ψ_{p(T)}` in the twisted polynomial ring, by the
//! commutation recurrence for its coefficients, and by reducing a universal
//! polynomial sequence that depends only on `deg p(T)`. The crate also builds
//! the supersingular isogeny-correspondence graph and checks the algebraic
//! identities behind the equations for `X_0(T^n)`.

pub mod algebra;
pub mod drinfeld;
pub mod error;
pub mod isogeny_graph;
pub mod ore;
pub mod tower;
pub mod universal;

pub use error::{Error, Result};
