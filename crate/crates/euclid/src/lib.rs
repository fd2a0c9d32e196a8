//! Exact models of Belyi maps attached to Euclidean permutation triples.
//!
//! The pipeline takes a triple (σ_a, σ_b, σ_c) whose orders are (3,3,3),
//! (2,3,6) or (2,4,4), finds the sublattice of translations it determines,
//! builds the isogeny between the two elliptic curves involved, and
//! descends the fixed quotient map through the rotation part.

pub mod algebra;
pub mod analytic;
pub mod belyi;
pub mod error;
pub mod isogeny;
pub mod triangle;
pub mod triples;

pub use error::{Error, Result};
