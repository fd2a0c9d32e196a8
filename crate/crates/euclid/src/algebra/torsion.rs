//! A ℤ[j]-module generator of E[N] on E_□ or E_hex, and the table of
//! x-coordinates of its multiples.
//!
//! The generator is the image of ω/N under the Weierstrass map. Its
//! x-coordinate is found numerically, its minimal polynomial over K is
//! recognized and then certified by dividing the primitive division
//! polynomial. Multiples are computed with the group law on the twist
//! F·η² = x³ + Ax + B where F = f(θ), so y never has to be adjoined.

use std::collections::BTreeMap;
use std::sync::Arc;

use rug::{Complex, Float};

use super::curve::{Curve, Point};
use super::cyclo::Base;
use super::divpoly::primitive_division_polynomial;
use super::field::{Fe, Field};
use super::poly::Poly;
use crate::analytic::lattice::{scale_to_model, Lattice, Model};
use crate::analytic::recognize::minpoly_over_k;
use crate::error::{Error, Result};

pub const MAX_PREC: u32 = 8192;

#[derive(Clone, Debug)]
pub struct TorsionTable {
    pub n: u32,
    pub field: Arc<Field>,
    pub curve: Curve,
    /// x(P) = θ.
    pub theta: Fe,
    /// (a, b) ↦ x([a + bj]P), `None` for the point at infinity.
    pub table: BTreeMap<(u32, u32), Option<Fe>>,
}

/// The lattice whose scaled model is the given standard curve.
pub fn standard_lattice(base: Base, prec: u32) -> Result<(Lattice, Model)> {
    let one = Complex::with_val(prec, 1);
    let (j, model) = match base {
        Base::Gauss => (Complex::with_val(prec, (0, 1)), Model::Square),
        Base::Eisenstein => (base.j_numeric(prec), Model::Hex),
    };
    Ok((Lattice::new(&one, &j, prec)?, model))
}

fn is_standard(e: &Curve) -> bool {
    let f = e.field();
    f.is_base()
        && match f.base {
            Base::Gauss => e.a == Fe::from_int(f, -1) && e.b.is_zero(),
            Base::Eisenstein => e.a.is_zero() && e.b.is_one(),
        }
}

/// Lifts a polynomial over K into a field with the same base.
fn lift(p: &Poly, f: &Arc<Field>) -> Poly {
    p.to_field(f).expect("coefficients lie in K")
}

pub fn torsion_generator(e: &Curve, n: u32) -> Result<TorsionTable> {
    if !is_standard(e) {
        return Err(Error::WrongCurve);
    }
    let k = e.field().clone();
    let base = k.base;
    let mut table = BTreeMap::new();
    if n == 1 {
        table.insert((0, 0), None);
        return Ok(TorsionTable { n, field: k.clone(), curve: e.clone(), theta: Fe::zero(&k), table });
    }
    let prim = primitive_division_polynomial(e, n as usize);
    let bound = prim.deg();
    let mut prec = 128;
    let (field, g) = loop {
        if prec > MAX_PREC {
            return Err(Error::PrecisionExhausted);
        }
        let (lat, model) = standard_lattice(base, prec)?;
        let s = scale_to_model(&lat, model)?;
        let z = Complex::with_val(prec, Float::with_val(prec, 1) / n);
        let (x0, _) = s.wp(&z)?;
        if let Some(g) = minpoly_over_k(&x0, base, bound, prec) {
            let gp = Poly::new(&k, g.iter().map(|c| Fe::from_kel(&k, c.clone())).collect());
            if gp.divides(&prim) {
                let field = if g.len() == 2 { Field::base(base) } else { Field::extension(base, g.clone(), x0)? };
                break (field, g);
            }
        }
        prec *= 2;
    };
    let theta = if g.len() == 2 {
        Fe::from_kel(&field, -&g[0])
    } else {
        Fe::theta(&field)
    };
    let curve = Curve { a: Fe::from_kel(&field, e.a.as_kel().unwrap().clone()), b: Fe::from_kel(&field, e.b.as_kel().unwrap().clone()) };
    debug_assert!(lift(&prim, &field).eval(&theta).is_zero());
    let twist = curve.rhs_at(&theta);
    let p = Point::new(theta.clone(), Fe::one(&field));
    for a in 0..n {
        for b in 0..n {
            let q = curve.cyclotomic_mul_twisted(&p, a as i64, b as i64, &twist)?;
            table.insert((a, b), q.x().cloned());
        }
    }
    Ok(TorsionTable { n, field, curve, theta, table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::divpoly::division_polynomial;

    fn roots_covered(t: &TorsionTable, e: &Curve) {
        // every finite x is a root of f_N, and each x of exact order D | N
        // appears for both ±P
        let fnp = lift(&division_polynomial(e, t.n as usize), &t.field);
        let mut counts: BTreeMap<String, usize> = BTreeMap::new();
        let mut inf = 0;
        for x in t.table.values() {
            match x {
                None => inf += 1,
                Some(x) => {
                    assert!(fnp.eval(x).is_zero());
                    *counts.entry(x.to_string()).or_default() += 1;
                }
            }
        }
        assert_eq!(inf, 1);
        assert_eq!(t.table.len() as u32, t.n * t.n);
        for (x, c) in &counts {
            assert!(*c == 1 || *c == 2, "{x} seen {c} times");
        }
    }

    #[test]
    fn hex_two() {
        let k = Field::base(Base::Eisenstein);
        let e = Curve::e_hex(&k);
        let t = torsion_generator(&e, 2).unwrap();
        assert!(t.field.is_base());
        roots_covered(&t, &e);
        let xs: Vec<_> = t.table.values().flatten().collect();
        assert_eq!(xs.len(), 3);
        for x in xs {
            assert!((&x.pow(3) + &Fe::one(&t.field)).is_zero());
        }
    }

    #[test]
    fn trivial() {
        let k = Field::base(Base::Gauss);
        let t = torsion_generator(&Curve::e_square(&k), 1).unwrap();
        assert_eq!(t.table.len(), 1);
        assert_eq!(t.table[&(0, 0)], None);
    }

    #[test]
    fn square_two_to_four() {
        let k = Field::base(Base::Gauss);
        let e = Curve::e_square(&k);
        for n in 2..=4 {
            let t = torsion_generator(&e, n).unwrap();
            roots_covered(&t, &e);
            // every nonzero N-torsion x appears: f_N has (N²−1)/2 or (N²+2)/2 roots
            let distinct: std::collections::BTreeSet<String> =
                t.table.values().flatten().map(|x| x.to_string()).collect();
            let want = if n % 2 == 1 { (n * n - 1) / 2 } else { (n * n + 2) / 2 };
            assert_eq!(distinct.len() as u32, want, "N = {n}");
        }
    }

    #[test]
    fn hex_three() {
        let k = Field::base(Base::Eisenstein);
        let e = Curve::e_hex(&k);
        let t = torsion_generator(&e, 3).unwrap();
        roots_covered(&t, &e);
        let distinct: std::collections::BTreeSet<String> =
            t.table.values().flatten().map(|x| x.to_string()).collect();
        assert_eq!(distinct.len(), 4);
    }

    #[test]
    fn rejects_other_curves() {
        let k = Field::base(Base::Gauss);
        let e = Curve { a: Fe::from_int(&k, 2), b: Fe::zero(&k) };
        assert_eq!(torsion_generator(&e, 2).unwrap_err(), Error::WrongCurve);
    }
}
