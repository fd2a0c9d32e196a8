//! High-precision complex analysis: ℘ on lattices, Eisenstein invariants,
//! model scaling, lattice reduction and algebraic-number recognition.

pub mod lattice;
pub mod lll;
pub mod recognize;

pub use lattice::{scale_to_model, Lattice, Model, ScaledLattice};
pub use recognize::{integer_relation, recognize_jointly, minpoly_over_k, minpoly_over_q, recognize, recognize_in_k};
