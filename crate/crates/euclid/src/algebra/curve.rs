//! Short Weierstrass curves y² = x³ + Ax + B and their group law.
//!
//! Points may be stored in twisted form: the curve carries a fixed element
//! F and a point (x, η) stands for (x, η·√F). With F = 1 these are ordinary
//! points. The twist lets the group law run over a field that contains x
//! but not y.

use std::fmt;
use std::sync::Arc;

use rug::Rational;

use super::cyclo::Base;
use super::field::{Fe, Field};
use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Curve {
    pub a: Fe,
    pub b: Fe,
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = {}", self.rhs())
    }
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Curve {
    pub fn new(a: Fe, b: Fe) -> Result<Curve> {
        let c = Curve { a, b };
        if c.discriminant().is_zero() {
            return Err(Error::InternalInconsistency("singular curve".into()));
        }
        Ok(c)
    }

    /// y² = x³ − x over a field with base ℚ(i).
    pub fn e_square(f: &Arc<Field>) -> Curve {
        Curve { a: Fe::from_int(f, -1), b: Fe::zero(f) }
    }

    /// y² = x³ + 1 over a field with base ℚ(ζ₆).
    pub fn e_hex(f: &Arc<Field>) -> Curve {
        Curve { a: Fe::zero(f), b: Fe::one(f) }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.a.field
    }

    /// 4A³ + 27B².
    pub fn discriminant(&self) -> Fe {
        let a3 = self.a.pow(3).scale(&Rational::from(4));
        let b2 = self.b.pow(2).scale(&Rational::from(27));
        &a3 + &b2
    }

    /// x³ + Ax + B.
    pub fn rhs(&self) -> Poly {
        let f = self.field();
        Poly::new(f, vec![self.b.clone(), self.a.clone(), Fe::zero(f), Fe::one(f)])
    }

    pub fn rhs_at(&self, x: &Fe) -> Fe {
        &(&x.pow(3) + &(&self.a * x)) + &self.b
    }

    pub fn is_on(&self, p: &Point) -> bool {
        self.is_on_twisted(p, &Fe::one(self.field()))
    }

    pub fn is_on_twisted(&self, p: &Point, twist: &Fe) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine(x, eta) => (twist * &eta.pow(2)) == self.rhs_at(x),
        }
    }

    /// Which automorphism j acts through, if the curve has one.
    fn cm_base(&self) -> Option<Base> {
        let base = self.field().base;
        match base {
            Base::Gauss if self.b.is_zero() => Some(base),
            Base::Eisenstein if self.a.is_zero() => Some(base),
            _ => None,
        }
    }

    pub fn neg(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x.clone(), -y),
        }
    }

    pub fn add(&self, p: &Point, q: &Point) -> Point {
        self.add_twisted(p, q, &Fe::one(self.field()))
    }

    pub fn add_twisted(&self, p: &Point, q: &Point, twist: &Fe) -> Point {
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return q.clone(),
            (_, Point::Infinity) => return p.clone(),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let mu = if x1 == x2 {
            if (y1 + y2).is_zero() {
                return Point::Infinity;
            }
            // doubling: μ = (3x² + A)/(2Fη)
            let num = &x1.pow(2).scale(&Rational::from(3)) + &self.a;
            let den = (twist * y1).scale(&Rational::from(2));
            num.div(&den).expect("nonzero")
        } else {
            (y2 - y1).div(&(x2 - x1)).expect("distinct x")
        };
        let x3 = &(&(twist * &mu.pow(2)) - x1) - x2;
        let y3 = &(&mu * &(x1 - &x3)) - y1;
        Point::Affine(x3, y3)
    }

    pub fn double(&self, p: &Point) -> Point {
        self.add(p, p)
    }

    pub fn scalar_mul(&self, p: &Point, n: i64) -> Point {
        self.scalar_mul_twisted(p, n, &Fe::one(self.field()))
    }

    pub fn scalar_mul_twisted(&self, p: &Point, n: i64, twist: &Fe) -> Point {
        let mut base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = Point::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_twisted(&acc, &base, twist);
            }
            k >>= 1;
            if k > 0 {
                base = self.add_twisted(&base, &base, twist);
            }
        }
        acc
    }

    /// [j]P: (x, y) ↦ (−x, iy) when B = 0 over ℚ(i), and
    /// (x, y) ↦ (ζ₃⁻¹x, −y) when A = 0 over ℚ(ζ₆).
    pub fn j_action(&self, p: &Point) -> Result<Point> {
        let base = self.cm_base().ok_or(Error::WrongCurve)?;
        let f = self.field();
        Ok(match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => match base {
                Base::Gauss => Point::Affine(-x, &Fe::j(f) * y),
                Base::Eisenstein => {
                    // ζ₃⁻¹ = −ζ₆
                    let z = -&Fe::j(f);
                    Point::Affine(&z * x, -y)
                }
            },
        })
    }

    /// [a + bj]P.
    pub fn cyclotomic_mul(&self, p: &Point, a: i64, b: i64) -> Result<Point> {
        self.cyclotomic_mul_twisted(p, a, b, &Fe::one(self.field()))
    }

    pub fn cyclotomic_mul_twisted(&self, p: &Point, a: i64, b: i64, twist: &Fe) -> Result<Point> {
        let ap = self.scalar_mul_twisted(p, a, twist);
        if b == 0 {
            return Ok(ap);
        }
        let jp = self.j_action(p)?;
        let bjp = self.scalar_mul_twisted(&jp, b, twist);
        Ok(self.add_twisted(&ap, &bjp, twist))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub enum Point {
    Infinity,
    Affine(Fe, Fe),
}

impl Point {
    pub fn new(x: Fe, y: Fe) -> Point {
        Point::Affine(x, y)
    }

    pub fn x(&self) -> Option<&Fe> {
        match self {
            Point::Infinity => None,
            Point::Affine(x, _) => Some(x),
        }
    }

    pub fn y(&self) -> Option<&Fe> {
        match self {
            Point::Infinity => None,
            Point::Affine(_, y) => Some(y),
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => write!(f, "O"),
            Point::Affine(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_torsion_on_square() {
        let f = Field::base(Base::Gauss);
        let e = Curve::e_square(&f);
        let o = Point::new(Fe::zero(&f), Fe::zero(&f));
        let one = Point::new(Fe::one(&f), Fe::zero(&f));
        assert!(e.double(&o).is_infinity());
        assert_eq!(e.add(&o, &one), Point::new(Fe::from_int(&f, -1), Fe::zero(&f)));
        assert_eq!(e.j_action(&o).unwrap(), o);
    }

    #[test]
    fn hex_j_action() {
        let f = Field::base(Base::Eisenstein);
        let e = Curve::e_hex(&f);
        let p = Point::new(Fe::from_int(&f, -1), Fe::zero(&f));
        assert!(e.double(&p).is_infinity());
        let q = e.j_action(&p).unwrap();
        assert!(e.is_on(&q));
        assert_ne!(q, p);
        let mut r = p.clone();
        for _ in 0..6 {
            r = e.j_action(&r).unwrap();
        }
        assert_eq!(r, p);
        let sq = Curve::e_square(&Field::base(Base::Gauss));
        assert_eq!(e.j_action(&Point::Infinity).unwrap(), Point::Infinity);
        assert!(sq.j_action(&Point::Infinity).is_ok());
        let bad = Curve { a: Fe::one(&f), b: Fe::one(&f) };
        assert_eq!(bad.j_action(&p).unwrap_err(), Error::WrongCurve);
    }

    #[test]
    fn twisted_law_matches_ordinary() {
        // y² = x³ + 1 with the point (2, 3) written as (2, 3/√9·…): use F = 9, η = 1
        let f = Field::base(Base::Eisenstein);
        let e = Curve::e_hex(&f);
        let p = Point::new(Fe::from_int(&f, 2), Fe::from_int(&f, 3));
        let pt = Point::new(Fe::from_int(&f, 2), Fe::one(&f));
        let nine = Fe::from_int(&f, 9);
        assert!(e.is_on_twisted(&pt, &nine));
        for n in 1..6 {
            let a = e.scalar_mul(&p, n);
            let b = e.scalar_mul_twisted(&pt, n, &nine);
            match (a, b) {
                (Point::Infinity, Point::Infinity) => {}
                (Point::Affine(x1, y1), Point::Affine(x2, y2)) => {
                    assert_eq!(x1, x2);
                    assert_eq!(y1, y2.scale(&Rational::from(3)));
                }
                _ => panic!("mismatch"),
            }
        }
    }
}
