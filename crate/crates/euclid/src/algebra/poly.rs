//! Dense univariate polynomials and rational functions over K′.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rug::{Complex, Rational};

use super::field::{Fe, Field};
use crate::error::{Error, Result};

/// Coefficients low degree first, no trailing zeros; the zero polynomial is empty.
#[derive(Clone)]
pub struct Poly {
    pub field: Arc<Field>,
    pub c: Vec<Fe>,
}

impl PartialEq for Poly {
    fn eq(&self, o: &Self) -> bool {
        self.c == o.c
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn new(field: &Arc<Field>, c: Vec<Fe>) -> Poly {
        let mut p = Poly { field: field.clone(), c };
        p.trim();
        p
    }

    pub fn zero(field: &Arc<Field>) -> Poly {
        Poly { field: field.clone(), c: Vec::new() }
    }

    pub fn one(field: &Arc<Field>) -> Poly {
        Poly::constant(Fe::one(field))
    }

    pub fn constant(a: Fe) -> Poly {
        let f = a.field.clone();
        Poly::new(&f, vec![a])
    }

    /// The polynomial x.
    pub fn x(field: &Arc<Field>) -> Poly {
        Poly::new(field, vec![Fe::zero(field), Fe::one(field)])
    }

    /// a·x^k.
    pub fn monomial(a: Fe, k: usize) -> Poly {
        let f = a.field.clone();
        let mut c = vec![Fe::zero(&f); k];
        c.push(a);
        Poly::new(&f, c)
    }

    /// Builds from integer coefficients, low degree first.
    pub fn from_ints(field: &Arc<Field>, c: &[i64]) -> Poly {
        Poly::new(field, c.iter().map(|&n| Fe::from_int(field, n)).collect())
    }

    pub fn from_rationals(field: &Arc<Field>, c: &[Rational]) -> Poly {
        Poly::new(field, c.iter().map(|r| Fe::from_rational(field, r.clone())).collect())
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(Fe::is_zero) {
            self.c.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// Degree, with the zero polynomial given degree −1.
    pub fn degree(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Fe {
        self.c.get(k).cloned().unwrap_or_else(|| Fe::zero(&self.field))
    }

    pub fn lead(&self) -> Fe {
        self.c.last().cloned().unwrap_or_else(|| Fe::zero(&self.field))
    }

    pub fn scale(&self, a: &Fe) -> Poly {
        Poly::new(&self.field, self.c.iter().map(|x| x * a).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().inv().expect("nonzero leading coefficient");
        let mut p = self.scale(&inv);
        if let Some(l) = p.c.last_mut() {
            *l = Fe::one(&self.field);
        }
        p
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().is_some_and(Fe::is_one)
    }

    pub fn derivative(&self) -> Poly {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| a.scale(&Rational::from(k)))
            .collect();
        Poly::new(&self.field, c)
    }

    pub fn eval(&self, x: &Fe) -> Fe {
        let mut acc = Fe::zero(&self.field);
        for a in self.c.iter().rev() {
            acc = &(&acc * x) + a;
        }
        acc
    }

    pub fn eval_numeric(&self, x: &Complex) -> Complex {
        let prec = x.prec().0;
        let mut acc = Complex::with_val(prec, 0);
        for a in self.c.iter().rev() {
            acc *= x;
            acc += a.embed(prec);
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one(&self.field);
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        out
    }

    /// self(q).
    pub fn compose(&self, q: &Poly) -> Poly {
        let mut acc = Poly::zero(&self.field);
        for a in self.c.iter().rev() {
            acc = &(&acc * q) + &Poly::constant(a.clone());
        }
        acc
    }

    /// p(x) ↦ p(a·x).
    pub fn rescale_var(&self, a: &Fe) -> Poly {
        let mut pw = Fe::one(&self.field);
        let mut c = Vec::with_capacity(self.c.len());
        for x in &self.c {
            c.push(x * &pw);
            pw = &pw * a;
        }
        Poly::new(&self.field, c)
    }

    pub fn divrem(&self, m: &Poly) -> Result<(Poly, Poly)> {
        if m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dm = m.deg();
        if self.degree() < m.degree() {
            return Ok((Poly::zero(&self.field), self.clone()));
        }
        let lead_inv = m.lead().inv()?;
        let mut r = self.c.clone();
        let mut q = vec![Fe::zero(&self.field); r.len() - dm];
        for k in (0..q.len()).rev() {
            let top = &r[k + dm];
            if top.is_zero() {
                continue;
            }
            let coef = top * &lead_inv;
            for (i, mi) in m.c.iter().enumerate() {
                if !mi.is_zero() {
                    r[k + i] = &r[k + i] - &(&coef * mi);
                }
            }
            q[k] = coef;
        }
        r.truncate(dm);
        Ok((Poly::new(&self.field, q), Poly::new(&self.field, r)))
    }

    pub fn rem(&self, m: &Poly) -> Result<Poly> {
        Ok(self.divrem(m)?.1)
    }

    /// Exact quotient; fails if the division leaves a remainder.
    pub fn div_exact(&self, m: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(m)?;
        if !r.is_zero() {
            return Err(Error::InternalInconsistency("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn divides(&self, n: &Poly) -> bool {
        n.divrem(self).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = if r.is_zero() { r } else { r.monic() };
        }
        a.monic()
    }

    /// (g, s, t) with s·self + t·o = g monic.
    pub fn xgcd(&self, o: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero");
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lead().inv().expect("nonzero");
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Yun's algorithm: pairs (monic squarefree factor, multiplicity) whose
    /// product is self up to the leading coefficient.
    pub fn squarefree(&self) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        if self.degree() < 1 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let mut a = f.gcd(&df);
        let mut b = f.div_exact(&a).expect("gcd divides");
        let mut c = df.div_exact(&a).expect("gcd divides derivative");
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while b.degree() > 0 {
            a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a).expect("gcd divides");
            c = d.div_exact(&a).expect("gcd divides");
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() <= 0
    }

    /// Resultant by the Euclidean algorithm.
    pub fn resultant(&self, o: &Poly) -> Fe {
        let f = &self.field;
        if self.is_zero() || o.is_zero() {
            return Fe::zero(f);
        }
        let (mut a, mut b) = (self.clone(), o.clone());
        let mut acc = Fe::one(f);
        loop {
            let (da, db) = (a.deg(), b.deg());
            if db == 0 {
                return &acc * &b.lead().pow(da as u32);
            }
            let r = a.rem(&b).expect("nonzero");
            if r.is_zero() {
                return Fe::zero(f);
            }
            let dr = r.deg();
            let mut factor = b.lead().pow((da - dr) as u32);
            if da % 2 == 1 && db % 2 == 1 {
                factor = -&factor;
            }
            acc = &acc * &factor;
            a = b;
            b = r;
        }
    }

    /// Power sums s_1..s_k of the roots of a monic polynomial (Newton).
    pub fn power_sums(&self, k: usize) -> Vec<Fe> {
        let f = &self.field;
        let n = self.deg();
        // e-coefficients: x^n + a_{n-1}x^{n-1} + … ; a_i = c[n - i]
        let a = |i: usize| -> Fe {
            if i <= n {
                self.c[n - i].clone()
            } else {
                Fe::zero(f)
            }
        };
        let mut s: Vec<Fe> = Vec::with_capacity(k + 1);
        s.push(Fe::from_int(f, n as i64));
        for m in 1..=k {
            let mut v = if m <= n { -&a(m).scale(&Rational::from(m)) } else { Fe::zero(f) };
            for i in 1..m {
                if i > n {
                    break;
                }
                v = &v - &(&a(i) * &s[m - i]);
            }
            s.push(v);
        }
        s.remove(0);
        s
    }

    /// Coefficients embedded at `prec` bits.
    pub fn embed(&self, prec: u32) -> Vec<Complex> {
        self.c.iter().map(|a| a.embed(prec)).collect()
    }

    /// Moves every coefficient into another field with the same base
    /// (only valid when the coefficients lie in K).
    pub fn to_field(&self, field: &Arc<Field>) -> Option<Poly> {
        let mut c = Vec::with_capacity(self.c.len());
        for a in &self.c {
            c.push(Fe::from_kel(field, a.as_kel()?.clone()));
        }
        Some(Poly::new(field, c))
    }

    /// Pretty form in variable `v`, highest degree first.
    pub fn show(&self, v: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let mut coef = a.to_string();
            let neg = coef.starts_with('-') && a.as_kel().is_some();
            if neg {
                coef = coef[1..].to_string();
            }
            if !s.is_empty() {
                s += if neg { " - " } else { " + " };
            } else if neg {
                s += "-";
            }
            let mono = match k {
                0 => String::new(),
                1 => v.to_string(),
                _ => format!("{v}^{k}"),
            };
            if mono.is_empty() {
                s += &coef;
            } else if coef == "1" {
                s += &mono;
            } else {
                s += &format!("{coef}*{mono}");
            }
        }
        s
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.show("x"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect();
        Poly::new(&self.field, c)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect();
        Poly::new(&self.field, c)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(&self.field, self.c.iter().map(|a| -a).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut c = vec![Fe::zero(&self.field); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] = &c[i + j] + &(a * b);
                }
            }
        }
        Poly::new(&self.field, c)
    }
}

/// num/den with gcd 1 and den monic.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFn {
    pub num: Poly,
    pub den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<RatFn> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            let f = num.field.clone();
            return Ok(RatFn { num, den: Poly::one(&f) });
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.degree() > 0 {
            (num.div_exact(&g)?, den.div_exact(&g)?)
        } else {
            (num, den)
        };
        let l = d.lead();
        if !l.is_one() {
            let inv = l.inv()?;
            n = n.scale(&inv);
            d = d.monic();
        }
        Ok(RatFn { num: n, den: d })
    }

    pub fn from_poly(p: Poly) -> RatFn {
        let f = p.field.clone();
        RatFn { num: p, den: Poly::one(&f) }
    }

    pub fn constant(a: Fe) -> RatFn {
        RatFn::from_poly(Poly::constant(a))
    }

    pub fn zero(f: &Arc<Field>) -> RatFn {
        RatFn::from_poly(Poly::zero(f))
    }

    pub fn one(f: &Arc<Field>) -> RatFn {
        RatFn::from_poly(Poly::one(f))
    }

    pub fn x(f: &Arc<Field>) -> RatFn {
        RatFn::from_poly(Poly::x(f))
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.num.field
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// max(deg num, deg den).
    pub fn degree(&self) -> usize {
        self.num.deg().max(self.den.deg())
    }

    pub fn inv(&self) -> Result<RatFn> {
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RatFn) -> Result<RatFn> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: u32) -> RatFn {
        RatFn { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn scale(&self, a: &Fe) -> RatFn {
        RatFn { num: self.num.scale(a), den: self.den.clone() }
    }

    pub fn derivative(&self) -> RatFn {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFn::new(n, &self.den * &self.den).expect("nonzero")
    }

    pub fn eval(&self, x: &Fe) -> Result<Fe> {
        self.num.eval(x).div(&self.den.eval(x))
    }

    /// self(q) for a rational function q.
    pub fn compose(&self, q: &RatFn) -> Result<RatFn> {
        // homogenize: Σ a_k P^k Q^(n-k) / Σ b_k P^k Q^(m-k), times Q^(m-n)
        let (n, m) = (self.num.deg(), self.den.deg());
        let top = n.max(m);
        let f = self.field();
        let mut ppow = vec![Poly::one(f)];
        let mut qpow = vec![Poly::one(f)];
        for _ in 0..top {
            ppow.push(&ppow[ppow.len() - 1] * &q.num);
            qpow.push(&qpow[qpow.len() - 1] * &q.den);
        }
        let hom = |p: &Poly| -> Poly {
            let mut acc = Poly::zero(f);
            for (k, a) in p.c.iter().enumerate() {
                if !a.is_zero() {
                    acc = &acc + &(&ppow[k] * &qpow[top - k]).scale(a);
                }
            }
            acc
        };
        let num = if self.num.is_zero() { Poly::zero(f) } else { hom(&self.num) };
        let den = hom(&self.den);
        RatFn::new(num, den)
    }

    pub fn eval_numeric(&self, x: &Complex) -> Complex {
        let n = self.num.eval_numeric(x);
        let d = self.den.eval_numeric(x);
        Complex::with_val(x.prec().0, n / d)
    }
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, o: &RatFn) -> RatFn {
        if self.den == o.den {
            return RatFn::new(&self.num + &o.num, self.den.clone()).expect("nonzero");
        }
        let n = &(&self.num * &o.den) + &(&o.num * &self.den);
        RatFn::new(n, &self.den * &o.den).expect("nonzero")
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, o: &RatFn) -> RatFn {
        self + &(-o)
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, o: &RatFn) -> RatFn {
        // cross-cancel first to keep sizes down
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let (n1, d2) = if g1.degree() > 0 {
            (self.num.div_exact(&g1).unwrap(), o.den.div_exact(&g1).unwrap())
        } else {
            (self.num.clone(), o.den.clone())
        };
        let (n2, d1) = if g2.degree() > 0 {
            (o.num.div_exact(&g2).unwrap(), self.den.div_exact(&g2).unwrap())
        } else {
            (o.num.clone(), self.den.clone())
        };
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        if num.is_zero() {
            return RatFn::zero(self.field());
        }
        // both denominators monic, cancelled: result already reduced
        RatFn { num, den }
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::cyclo::{Base, Kel};

    fn q() -> Arc<Field> {
        Field::base(Base::Gauss)
    }

    #[test]
    fn gcd_example() {
        let f = q();
        let a = Poly::from_ints(&f, &[0, -1, 0, 1]);
        let b = Poly::from_ints(&f, &[-1, 0, 1]);
        assert_eq!(a.gcd(&b), b);
    }

    #[test]
    fn squarefree_example() {
        let f = q();
        let a = Poly::from_ints(&f, &[-8, 1]);
        let b = Poly::from_ints(&f, &[24, 1]);
        let p = &a * &b.pow(3);
        let sf = p.squarefree();
        assert_eq!(sf, vec![(a, 1), (b, 3)]);
    }

    #[test]
    fn resultant_shared_root() {
        let f = q();
        let a = Poly::from_ints(&f, &[1, 0, 1]);
        let b = Poly::new(&f, vec![-&Fe::j(&f), Fe::one(&f)]);
        assert!(a.resultant(&b).is_zero());
        // Res(x^2+1, x-2) = 5
        let c = Poly::from_ints(&f, &[-2, 1]);
        assert_eq!(a.resultant(&c), Fe::from_int(&f, 5));
    }

    #[test]
    fn power_sums_of_cubic() {
        let f = q();
        // roots 1, 2, 3
        let p = Poly::from_ints(&f, &[-6, 11, -6, 1]);
        let s = p.power_sums(4);
        let want = [6, 14, 36, 98];
        for (a, b) in s.iter().zip(want) {
            assert_eq!(*a, Fe::from_int(&f, b));
        }
    }

    #[test]
    fn ratfn_compose() {
        let f = q();
        let r = RatFn::new(Poly::from_ints(&f, &[1, 1]), Poly::from_ints(&f, &[-1, 1])).unwrap();
        // (x+1)/(x-1) is an involution
        let rr = r.compose(&r).unwrap();
        assert_eq!(rr, RatFn::x(&f));
        let k = Kel::new(Base::Gauss, 2, 1);
        let x = Fe::from_kel(&f, k);
        let v = r.eval(&x).unwrap();
        assert_eq!(r.eval(&v).unwrap(), x);
    }
}
