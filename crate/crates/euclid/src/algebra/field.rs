//! Elements of K′ = K(θ), with K = ℚ(i) or ℚ(ζ₆) and θ a root of a monic
//! irreducible g over K. When no extension is present K′ = K.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use rug::{Complex, Rational};

use super::cyclo::{Base, Kel};
use crate::error::{Error, Result};

pub struct Field {
    pub base: Base,
    /// Monic minimal polynomial of θ over K, low degree first. `None` means K′ = K.
    pub g: Option<Vec<Kel>>,
    /// Best known approximation of θ, refined on demand.
    theta: Option<Mutex<Complex>>,
}

impl PartialEq for Field {
    fn eq(&self, o: &Self) -> bool {
        self.base == o.base && self.g == o.g
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

impl Field {
    pub fn base(base: Base) -> Arc<Field> {
        Arc::new(Field { base, g: None, theta: None })
    }

    /// K(θ) with θ the root of `g` closest to `theta`.
    pub fn extension(base: Base, g: Vec<Kel>, theta: Complex) -> Result<Arc<Field>> {
        if g.len() < 2 || !g.last().unwrap().is_one() {
            return Err(Error::InternalInconsistency("minimal polynomial must be monic".into()));
        }
        if g.len() == 2 {
            return Ok(Field::base(base));
        }
        Ok(Arc::new(Field { base, g: Some(g), theta: Some(Mutex::new(theta)) }))
    }

    /// [K′ : K].
    pub fn rel_degree(&self) -> usize {
        self.g.as_ref().map_or(1, |g| g.len() - 1)
    }

    pub fn is_base(&self) -> bool {
        self.g.is_none()
    }

    /// Numeric θ at `prec` bits, refined by Newton iteration if needed.
    pub fn theta_numeric(&self, prec: u32) -> Option<Complex> {
        let g = self.g.as_ref()?;
        let mut cached = self.theta.as_ref()?.lock().unwrap_or_else(|e| e.into_inner());
        let have = cached.prec().0;
        if prec + 32 <= have {
            return Some(Complex::with_val(prec, &*cached));
        }
        let wp = prec + 64;
        let coeffs: Vec<Complex> = g.iter().map(|c| c.embed(wp)).collect();
        let mut t = Complex::with_val(wp, &*cached);
        let mut p = have / 2;
        let mut steps = 0;
        while (p < wp || steps < 3) && steps < 64 {
            let (v, dv) = eval_with_derivative(&coeffs, &t);
            t -= Complex::with_val(wp, &v / &dv);
            p *= 2;
            steps += 1;
        }
        *cached = t.clone();
        Some(Complex::with_val(prec, t))
    }

    pub fn describe(&self) -> String {
        match &self.g {
            None => format!("Q({})", self.base.name()),
            Some(g) => {
                let mut terms = Vec::new();
                for (k, c) in g.iter().enumerate().rev() {
                    if c.is_zero() {
                        continue;
                    }
                    let mono = match k {
                        0 => String::new(),
                        1 => "th".to_string(),
                        _ => format!("th^{k}"),
                    };
                    if mono.is_empty() {
                        terms.push(c.to_string());
                    } else if c.is_one() {
                        terms.push(mono);
                    } else {
                        terms.push(format!("{c}*{mono}"));
                    }
                }
                let mut out = String::new();
                for (k, t) in terms.iter().enumerate() {
                    match (k, t.strip_prefix('-')) {
                        (0, _) => out.push_str(t),
                        (_, Some(rest)) => out.push_str(&format!(" - {rest}")),
                        (_, None) => out.push_str(&format!(" + {t}")),
                    }
                }
                format!("Q({})(th), {out} = 0", self.base.name())
            }
        }
    }
}

fn eval_with_derivative(c: &[Complex], t: &Complex) -> (Complex, Complex) {
    let prec = t.prec().0;
    let mut v = Complex::with_val(prec, 0);
    let mut dv = Complex::with_val(prec, 0);
    for a in c.iter().rev() {
        dv *= t;
        dv += &v;
        v *= t;
        v += a;
    }
    (v, dv)
}

#[derive(Clone)]
pub struct Fe {
    pub field: Arc<Field>,
    /// Coordinates on 1, θ, …, θ^{m−1}.
    pub c: Vec<Kel>,
}

impl PartialEq for Fe {
    fn eq(&self, o: &Self) -> bool {
        self.c == o.c
    }
}

impl Eq for Fe {}

impl Fe {
    pub fn zero(f: &Arc<Field>) -> Fe {
        Fe { field: f.clone(), c: vec![Kel::zero(f.base); f.rel_degree()] }
    }

    pub fn one(f: &Arc<Field>) -> Fe {
        Fe::from_kel(f, Kel::one(f.base))
    }

    pub fn from_int(f: &Arc<Field>, n: i64) -> Fe {
        Fe::from_kel(f, Kel::new(f.base, n, 0))
    }

    pub fn from_rational(f: &Arc<Field>, r: Rational) -> Fe {
        Fe::from_kel(f, Kel::from_rational(f.base, r))
    }

    pub fn from_kel(f: &Arc<Field>, k: Kel) -> Fe {
        let mut c = vec![Kel::zero(f.base); f.rel_degree()];
        c[0] = k;
        Fe { field: f.clone(), c }
    }

    pub fn j(f: &Arc<Field>) -> Fe {
        Fe::from_kel(f, Kel::j(f.base))
    }

    pub fn theta(f: &Arc<Field>) -> Fe {
        let mut e = Fe::zero(f);
        if e.c.len() > 1 {
            e.c[1] = Kel::one(f.base);
        } else {
            // θ is a root of a linear polynomial; never constructed that way
            e.c[0] = Kel::zero(f.base);
        }
        e
    }

    pub fn from_coords(f: &Arc<Field>, c: Vec<Kel>) -> Fe {
        assert_eq!(c.len(), f.rel_degree());
        Fe { field: f.clone(), c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Kel::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Kel::is_zero)
    }

    /// The element as a K-element, if it lies in K.
    pub fn as_kel(&self) -> Option<&Kel> {
        if self.c[1..].iter().all(Kel::is_zero) {
            Some(&self.c[0])
        } else {
            None
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.as_kel().filter(|k| k.is_rational()).map(|k| &k.a)
    }

    pub fn scale(&self, r: &Rational) -> Fe {
        Fe { field: self.field.clone(), c: self.c.iter().map(|k| k.scale(r)).collect() }
    }

    pub fn pow(&self, e: u32) -> Fe {
        let mut out = Fe::one(&self.field);
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        out
    }

    pub fn inv(&self) -> Result<Fe> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let Some(g) = &self.field.g else {
            return Ok(Fe::from_kel(&self.field, self.c[0].inv()?));
        };
        // solve s·self ≡ 1 mod g
        let a = trim(self.c.clone());
        let (d, s) = kpoly_xgcd(&a, g);
        if d.len() != 1 {
            return Err(Error::DivisionByZero);
        }
        let dinv = d[0].inv()?;
        let mut c: Vec<Kel> = s.iter().map(|k| &dinv * k).collect();
        c.resize(self.field.rel_degree(), Kel::zero(self.field.base));
        Ok(Fe { field: self.field.clone(), c })
    }

    pub fn div(&self, o: &Fe) -> Result<Fe> {
        Ok(self * &o.inv()?)
    }

    pub fn embed(&self, prec: u32) -> Complex {
        let wp = prec + 16;
        let mut acc = Complex::with_val(wp, 0);
        match self.field.theta_numeric(wp) {
            None => acc += self.c[0].embed(wp),
            Some(t) => {
                for k in self.c.iter().rev() {
                    acc *= &t;
                    acc += k.embed(wp);
                }
            }
        }
        Complex::with_val(prec, acc)
    }

    /// Complex conjugation on the base coordinates (valid only in K).
    pub fn conj_base(&self) -> Option<Fe> {
        let k = self.as_kel()?;
        Some(Fe::from_kel(&self.field, k.conj()))
    }
}

fn trim(mut v: Vec<Kel>) -> Vec<Kel> {
    while v.len() > 1 && v.last().unwrap().is_zero() {
        v.pop();
    }
    v
}

fn kpoly_mul(a: &[Kel], b: &[Kel]) -> Vec<Kel> {
    let base = a[0].base;
    let mut out = vec![Kel::zero(base); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// Quotient and remainder of `a` by a nonzero `m`.
fn kpoly_divrem(a: &[Kel], m: &[Kel]) -> (Vec<Kel>, Vec<Kel>) {
    let base = m[0].base;
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    if r.len() <= dm {
        return (vec![Kel::zero(base)], trim(r));
    }
    let lead_inv = m[dm].inv().expect("nonzero modulus");
    let mut q = vec![Kel::zero(base); r.len() - dm];
    for k in (0..q.len()).rev() {
        if r[k + dm].is_zero() {
            continue;
        }
        let coef = &r[k + dm] * &lead_inv;
        for (i, mi) in m.iter().enumerate() {
            r[k + i] = &r[k + i] - &(&coef * mi);
        }
        q[k] = coef;
    }
    r.truncate(dm.max(1));
    if dm == 0 {
        r[0] = Kel::zero(base);
    }
    (trim(q), trim(r))
}

/// Returns (d, s) with d = gcd(a, m) and s·a ≡ d mod m.
fn kpoly_xgcd(a: &[Kel], m: &[Kel]) -> (Vec<Kel>, Vec<Kel>) {
    let base = m[0].base;
    let (mut r0, mut r1) = (m.to_vec(), trim(a.to_vec()));
    let (mut s0, mut s1) = (vec![Kel::zero(base)], vec![Kel::one(base)]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = kpoly_divrem(&r0, &r1);
        let qs = kpoly_mul(&q, &s1);
        let n = s0.len().max(qs.len());
        let mut s2 = vec![Kel::zero(base); n];
        for (i, x) in s0.iter().enumerate() {
            s2[i] = &s2[i] + x;
        }
        for (i, x) in qs.iter().enumerate() {
            s2[i] = &s2[i] - x;
        }
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, trim(s2));
    }
    let s = kpoly_divrem(&s0, m).1;
    (r0, s)
}

impl Add for &Fe {
    type Output = Fe;
    fn add(self, o: &Fe) -> Fe {
        Fe {
            field: self.field.clone(),
            c: self.c.iter().zip(&o.c).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub for &Fe {
    type Output = Fe;
    fn sub(self, o: &Fe) -> Fe {
        Fe {
            field: self.field.clone(),
            c: self.c.iter().zip(&o.c).map(|(x, y)| x - y).collect(),
        }
    }
}

impl Neg for &Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        Fe { field: self.field.clone(), c: self.c.iter().map(|x| -x).collect() }
    }
}

impl Mul for &Fe {
    type Output = Fe;
    fn mul(self, o: &Fe) -> Fe {
        let Some(g) = &self.field.g else {
            return Fe { field: self.field.clone(), c: vec![&self.c[0] * &o.c[0]] };
        };
        let prod = kpoly_mul(&self.c, &o.c);
        let mut r = kpoly_divrem(&prod, g).1;
        r.resize(self.field.rel_degree(), Kel::zero(self.field.base));
        Fe { field: self.field.clone(), c: r }
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(k) = self.as_kel() {
            return write!(f, "{k}");
        }
        let mut out = String::new();
        for (i, k) in self.c.iter().enumerate() {
            if k.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "th".to_string(),
                _ => format!("th^{i}"),
            };
            let coef = k.to_string();
            let term = match (mono.is_empty(), coef.as_str()) {
                (true, _) => coef,
                (false, "1") => mono,
                (false, "-1") => format!("-{mono}"),
                _ => format!("{coef}*{mono}"),
            };
            match (out.is_empty(), term.strip_prefix('-')) {
                (true, _) => out = term,
                (false, Some(rest)) => out += &format!(" - {rest}"),
                (false, None) => out += &format!(" + {term}"),
            }
        }
        write!(f, "({out})")
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
