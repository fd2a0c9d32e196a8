//! The function field of y² = f(x): elements a(x) + b(x)·y with rational
//! functions a, b. This form is canonical, so equality is structural.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::curve::{Curve, Point};
use super::field::{Fe, Field};
use super::poly::{Poly, RatFn};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct FnElt {
    pub a: RatFn,
    pub b: RatFn,
    /// f(x) of the curve.
    pub f: Poly,
}

impl FnElt {
    pub fn new(a: RatFn, b: RatFn, f: &Poly) -> FnElt {
        FnElt { a, b, f: f.clone() }
    }

    pub fn from_ratfn(a: RatFn, f: &Poly) -> FnElt {
        let fld = a.field().clone();
        FnElt { a, b: RatFn::zero(&fld), f: f.clone() }
    }

    pub fn constant(c: Fe, f: &Poly) -> FnElt {
        FnElt::from_ratfn(RatFn::constant(c), f)
    }

    pub fn x(e: &Curve) -> FnElt {
        FnElt::from_ratfn(RatFn::x(e.field()), &e.rhs())
    }

    pub fn y(e: &Curve) -> FnElt {
        let fld = e.field();
        FnElt { a: RatFn::zero(fld), b: RatFn::one(fld), f: e.rhs() }
    }

    pub fn field(&self) -> &Arc<Field> {
        self.a.field()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// (a − by)/(a² − b²f).
    pub fn inv(&self) -> Result<FnElt> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ff = RatFn::from_poly(self.f.clone());
        let norm = &(&self.a * &self.a) - &(&(&self.b * &self.b) * &ff);
        let ninv = norm.inv()?;
        Ok(FnElt { a: &self.a * &ninv, b: -&(&self.b * &ninv), f: self.f.clone() })
    }

    pub fn div(&self, o: &FnElt) -> Result<FnElt> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: u32) -> FnElt {
        let mut out = FnElt::constant(Fe::one(self.field()), &self.f);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Substitutes x ↦ `xs`, y ↦ `ys`, both elements of another function field.
    pub fn substitute(&self, xs: &FnElt, ys: &FnElt) -> Result<FnElt> {
        let a = eval_ratfn(&self.a, xs)?;
        let b = eval_ratfn(&self.b, xs)?;
        Ok(&a + &(&b * ys))
    }

    /// Evaluates at a finite point (exactly); fails at poles.
    pub fn eval(&self, p: &Point) -> Result<Fe> {
        match p {
            Point::Infinity => Err(Error::DivisionByZero),
            Point::Affine(x, y) => Ok(&self.a.eval(x)? + &(&self.b.eval(x)? * y)),
        }
    }
}

/// r(X) for a function-field element X, by Horner on numerator and denominator.
fn eval_ratfn(r: &RatFn, xs: &FnElt) -> Result<FnElt> {
    if xs.b.is_zero() {
        return Ok(FnElt::from_ratfn(r.compose(&xs.a)?, &xs.f));
    }
    let fld = xs.field().clone();
    let horner = |p: &Poly| -> FnElt {
        let mut acc = FnElt::constant(Fe::zero(&fld), &xs.f);
        for c in p.c.iter().rev() {
            acc = &(&acc * xs) + &FnElt::constant(c.clone(), &xs.f);
        }
        acc
    };
    horner(&r.num).div(&horner(&r.den))
}

impl Add for &FnElt {
    type Output = FnElt;
    fn add(self, o: &FnElt) -> FnElt {
        FnElt { a: &self.a + &o.a, b: &self.b + &o.b, f: self.f.clone() }
    }
}

impl Sub for &FnElt {
    type Output = FnElt;
    fn sub(self, o: &FnElt) -> FnElt {
        FnElt { a: &self.a - &o.a, b: &self.b - &o.b, f: self.f.clone() }
    }
}

impl Neg for &FnElt {
    type Output = FnElt;
    fn neg(self) -> FnElt {
        FnElt { a: -&self.a, b: -&self.b, f: self.f.clone() }
    }
}

impl Mul for &FnElt {
    type Output = FnElt;
    fn mul(self, o: &FnElt) -> FnElt {
        if self.b.is_zero() && o.b.is_zero() {
            return FnElt { a: &self.a * &o.a, b: self.b.clone(), f: self.f.clone() };
        }
        let ff = RatFn::from_poly(self.f.clone());
        let a = &(&self.a * &o.a) + &(&(&self.b * &o.b) * &ff);
        let b = &(&self.a * &o.b) + &(&self.b * &o.a);
        FnElt { a, b, f: self.f.clone() }
    }
}

impl fmt::Display for FnElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "({})*y", self.b)
        } else {
            write!(f, "{} + ({})*y", self.a, self.b)
        }
    }
}

impl fmt::Debug for FnElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The translation τ_P : Q ↦ Q + P as a pair (X, Y) of function-field elements.
pub fn translation(e: &Curve, p: &Point) -> Result<(FnElt, FnElt)> {
    let x = FnElt::x(e);
    let y = FnElt::y(e);
    let (x0, y0) = match p {
        Point::Infinity => return Ok((x, y)),
        Point::Affine(x0, y0) => (x0, y0),
    };
    let f = e.rhs();
    let cx = FnElt::constant(x0.clone(), &f);
    let cy = FnElt::constant(y0.clone(), &f);
    let lam = (&y - &cy).div(&(&x - &cx))?;
    let x3 = &(&(&lam * &lam) - &x) - &cx;
    let y3 = &(&lam * &(&cx - &x3)) - &cy;
    Ok((x3, y3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::cyclo::Base;

    #[test]
    fn inverse_round_trip() {
        let f = Field::base(Base::Eisenstein);
        let e = Curve::e_hex(&f);
        let y = FnElt::y(&e);
        let x = FnElt::x(&e);
        let g = &(&y + &FnElt::constant(Fe::one(&f), &e.rhs())) * &x;
        let h = g.inv().unwrap();
        let one = &g * &h;
        assert_eq!(one, FnElt::constant(Fe::one(&f), &e.rhs()));
    }

    #[test]
    fn translation_by_two_torsion() {
        // on y² = x³ − x, translation by (0,0) sends x to −1/x
        let f = Field::base(Base::Gauss);
        let e = Curve::e_square(&f);
        let o = Point::new(Fe::zero(&f), Fe::zero(&f));
        let (x3, _) = translation(&e, &o).unwrap();
        let want = RatFn::new(Poly::from_ints(&f, &[-1]), Poly::x(&f)).unwrap();
        assert_eq!(x3, FnElt::from_ratfn(want, &e.rhs()));
    }

    #[test]
    fn evaluation_matches_group_law() {
        let f = Field::base(Base::Eisenstein);
        let e = Curve::e_hex(&f);
        let p = Point::new(Fe::from_int(&f, 2), Fe::from_int(&f, 3));
        let q = Point::new(Fe::from_int(&f, 0), Fe::from_int(&f, 1));
        let (x3, y3) = translation(&e, &p).unwrap();
        let s = e.add(&q, &p);
        assert_eq!(x3.eval(&q).unwrap(), *s.x().unwrap());
        assert_eq!(y3.eval(&q).unwrap(), *s.y().unwrap());
    }
}
