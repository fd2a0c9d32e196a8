//! The base fields ℚ(i) and ℚ(ζ₆), elements written a + b·j.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Complex, Float, Integer, Rational};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    /// ℚ(i), j² = −1
    Gauss,
    /// ℚ(ζ₆), j² = j − 1
    Eisenstein,
}

impl Base {
    /// Order of j as a root of unity.
    pub fn unit_order(self) -> u32 {
        match self {
            Base::Gauss => 4,
            Base::Eisenstein => 6,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Base::Gauss => "i",
            Base::Eisenstein => "z6",
        }
    }

    /// Minimal polynomial of j as text.
    pub fn minpoly_str(self) -> &'static str {
        match self {
            Base::Gauss => "t^2 + 1",
            Base::Eisenstein => "t^2 - t + 1",
        }
    }

    pub fn j_numeric(self, prec: u32) -> Complex {
        match self {
            Base::Gauss => Complex::with_val(prec, (0, 1)),
            Base::Eisenstein => {
                let s3 = Float::with_val(prec, 3).sqrt() / 2u32;
                Complex::with_val(prec, (Float::with_val(prec, 0.5), s3))
            }
        }
    }
}

/// a + b·j with rational a, b.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Kel {
    pub base: Base,
    pub a: Rational,
    pub b: Rational,
}

impl Kel {
    pub fn new(base: Base, a: impl Into<Rational>, b: impl Into<Rational>) -> Self {
        Kel { base, a: a.into(), b: b.into() }
    }

    pub fn zero(base: Base) -> Self {
        Kel::new(base, 0, 0)
    }

    pub fn one(base: Base) -> Self {
        Kel::new(base, 1, 0)
    }

    pub fn j(base: Base) -> Self {
        Kel::new(base, 0, 1)
    }

    pub fn from_rational(base: Base, r: Rational) -> Self {
        Kel { base, a: r, b: Rational::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn is_one(&self) -> bool {
        self.a == 1 && self.b == 0
    }

    pub fn is_rational(&self) -> bool {
        self.b == 0
    }

    /// j^k for any integer k.
    pub fn j_pow(base: Base, k: i64) -> Self {
        let n = base.unit_order() as i64;
        let k = k.rem_euclid(n);
        let mut out = Kel::one(base);
        for _ in 0..k {
            out = &out * &Kel::j(base);
        }
        out
    }

    /// Complex conjugate: j̄ = −j for ℚ(i), j̄ = 1 − j for ℚ(ζ₆).
    pub fn conj(&self) -> Kel {
        match self.base {
            Base::Gauss => Kel { base: self.base, a: self.a.clone(), b: Rational::from(-&self.b) },
            Base::Eisenstein => Kel {
                base: self.base,
                a: Rational::from(&self.a + &self.b),
                b: Rational::from(-&self.b),
            },
        }
    }

    /// Field norm to ℚ.
    pub fn norm(&self) -> Rational {
        let n = self * &self.conj();
        debug_assert!(n.b == 0);
        n.a
    }

    pub fn inv(&self) -> Result<Kel> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        let c = self.conj();
        Ok(Kel { base: self.base, a: Rational::from(&c.a / &n), b: Rational::from(&c.b / &n) })
    }

    pub fn pow(&self, e: u32) -> Kel {
        let mut out = Kel::one(self.base);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Kel {
        Kel { base: self.base, a: Rational::from(&self.a * r), b: Rational::from(&self.b * r) }
    }

    /// Least common denominator of the two coordinates.
    pub fn denom(&self) -> Integer {
        self.a.denom().clone().lcm(self.b.denom())
    }

    pub fn embed(&self, prec: u32) -> Complex {
        let j = self.base.j_numeric(prec);
        let a = Float::with_val(prec, &self.a);
        let b = Float::with_val(prec, &self.b);
        Complex::with_val(prec, j * b + a)
    }
}

impl Add for &Kel {
    type Output = Kel;
    fn add(self, o: &Kel) -> Kel {
        Kel { base: self.base, a: Rational::from(&self.a + &o.a), b: Rational::from(&self.b + &o.b) }
    }
}

impl Sub for &Kel {
    type Output = Kel;
    fn sub(self, o: &Kel) -> Kel {
        Kel { base: self.base, a: Rational::from(&self.a - &o.a), b: Rational::from(&self.b - &o.b) }
    }
}

impl Neg for &Kel {
    type Output = Kel;
    fn neg(self) -> Kel {
        Kel { base: self.base, a: Rational::from(-&self.a), b: Rational::from(-&self.b) }
    }
}

impl Mul for &Kel {
    type Output = Kel;
    fn mul(self, o: &Kel) -> Kel {
        if self.b == 0 && o.b == 0 {
            return Kel {
                base: self.base,
                a: Rational::from(&self.a * &o.a),
                b: Rational::new(),
            };
        }
        let ac = Rational::from(&self.a * &o.a);
        let bd = Rational::from(&self.b * &o.b);
        let cross = Rational::from(&self.a * &o.b) + Rational::from(&self.b * &o.a);
        match self.base {
            Base::Gauss => Kel { base: self.base, a: ac - bd, b: cross },
            Base::Eisenstein => Kel { base: self.base, a: ac - &bd, b: cross + bd },
        }
    }
}

impl fmt::Display for Kel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = self.base.name();
        match (self.a == 0, self.b == 0) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => {
                if self.b == 1 {
                    write!(f, "{j}")
                } else if self.b == -1 {
                    write!(f, "-{j}")
                } else {
                    write!(f, "{}*{j}", self.b)
                }
            }
            (false, false) => {
                let sign = if self.b < 0 { "-" } else { "+" };
                let mag = Rational::from(self.b.abs_ref());
                if mag == 1 {
                    write!(f, "({} {sign} {j})", self.a)
                } else {
                    write!(f, "({} {sign} {mag}*{j})", self.a)
                }
            }
        }
    }
}

impl fmt::Debug for Kel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations() {
        let z = Kel::j(Base::Eisenstein);
        assert_eq!(&z * &z, &z - &Kel::one(Base::Eisenstein));
        assert_eq!(z.pow(6), Kel::one(Base::Eisenstein));
        assert_eq!(z.pow(3), Kel::new(Base::Eisenstein, -1, 0));
        let p = Kel::new(Base::Gauss, 1, 1);
        let m = Kel::new(Base::Gauss, 1, -1);
        assert_eq!(&p * &m, Kel::new(Base::Gauss, 2, 0));
        assert_eq!(Kel::j_pow(Base::Gauss, -1), Kel::new(Base::Gauss, 0, -1));
    }

    #[test]
    fn inverse_and_norm() {
        for base in [Base::Gauss, Base::Eisenstein] {
            let x = Kel::new(base, Rational::from((3, 7)), -2);
            let y = x.inv().unwrap();
            assert!((&x * &y).is_one());
            assert_eq!(x.conj().conj(), x);
        }
        assert!(Kel::zero(Base::Gauss).inv().is_err());
    }

    #[test]
    fn embedding_of_zeta6() {
        let z = Kel::j(Base::Eisenstein).embed(200);
        let want = Complex::with_val(200, (0.5, 0.8660254037844386));
        let err = Complex::with_val(200, &z - &want).abs().real().to_f64();
        assert!(err < 1e-15);
        // ζ₆⁶ = 1 numerically to full precision
        let mut p = Complex::with_val(200, 1);
        for _ in 0..6 {
            p *= &z;
        }
        p -= 1;
        assert!(p.abs().real().to_f64() < 1e-55);
    }
}
