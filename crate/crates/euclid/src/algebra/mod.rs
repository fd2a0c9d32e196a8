//! Exact arithmetic: the base fields, their extensions, polynomials,
//! curves, division polynomials and function fields.

pub mod curve;
pub mod cyclo;
pub mod divpoly;
pub mod field;
pub mod funcfield;
pub mod poly;
pub mod torsion;

pub use curve::{Curve, Point};
pub use cyclo::{Base, Kel};
pub use field::{Fe, Field};
pub use funcfield::FnElt;
pub use poly::{Poly, RatFn};
pub use torsion::{torsion_generator, TorsionTable};
