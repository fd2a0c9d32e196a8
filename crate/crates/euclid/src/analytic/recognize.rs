//! Recognizing algebraic numbers from high-precision approximations via
//! integer relations. Every answer is a guess; callers certify it exactly.

use std::sync::Arc;

use rug::{Complex, Float, Integer, Rational};

use super::lll::lll;
use crate::algebra::{Base, Fe, Field, Kel};
use crate::error::{Error, Result};

/// Bits of the input left out of the embedding to absorb rounding.
const SLACK: u32 = 24;

fn log2_abs(z: &Complex) -> f64 {
    let a = Float::with_val(64, z.abs_ref());
    if a.is_zero() {
        f64::NEG_INFINITY
    } else {
        a.log2().to_f64()
    }
}

/// Finds a short integer vector a with Σ a_k z_k ≈ 0. `prec` is the number
/// of bits to which the z_k are trusted.
pub fn integer_relation(zs: &[Complex], prec: u32) -> Option<Vec<Integer>> {
    let n = zs.len();
    if n < 2 || prec < 2 * SLACK {
        return None;
    }
    let scale_bits = prec - SLACK;
    let wp = prec + 64;
    let scale = Float::with_val(wp, Float::u_exp(1, scale_bits as i32));
    // inputs that are real up to noise contribute a single real constraint
    let real_only = zs.iter().all(|z| {
        let im = Float::with_val(64, z.imag().abs_ref());
        im.is_zero() || im.log2().to_f64() < log2_abs(z).max(0.0) - 0.5 * prec as f64
    });
    let mut basis: Vec<Vec<Integer>> = Vec::with_capacity(n);
    for (k, z) in zs.iter().enumerate() {
        let mut row = vec![Integer::new(); n + 2];
        row[k] = Integer::from(1);
        let re = Float::with_val(wp, z.real() * &scale).round();
        let im = Float::with_val(wp, z.imag() * &scale).round();
        row[n] = re.to_integer()?;
        if !real_only {
            row[n + 1] = im.to_integer()?;
        }
        basis.push(row);
    }
    if !lll(&mut basis) {
        return None;
    }
    let rel: Vec<Integer> = basis[0][..n].to_vec();
    if rel.iter().all(|a| *a == 0) {
        return None;
    }
    // size check: a genuine relation is far shorter than the shortest vector
    // of a generic lattice of this shape, which has about r·bits/n bits
    let real_rows = if real_only { 1.0 } else { 2.0 };
    let maxbits = rel.iter().map(|a| a.significant_bits()).max().unwrap_or(0) as f64;
    if maxbits > 0.6 * real_rows * scale_bits as f64 / n as f64 {
        return None;
    }
    // residual check at full precision
    let mut acc = Complex::with_val(wp, 0);
    for (a, z) in rel.iter().zip(zs) {
        acc += Complex::with_val(wp, z * a);
    }
    if real_only {
        acc = Complex::with_val(wp, (acc.real(), 0));
    }
    let bound = -(scale_bits as f64) + maxbits + (n as f64).log2() + 8.0;
    if log2_abs(&acc) > bound {
        return None;
    }
    Some(rel)
}

/// Recognizes z as an element of K = ℚ(j).
pub fn recognize_in_k(z: &Complex, base: Base, prec: u32) -> Option<Kel> {
    let wp = z.prec().0.max(prec);
    let j = base.j_numeric(wp);
    let rel = integer_relation(&[z.clone(), Complex::with_val(wp, 1), j], prec)?;
    if rel[0] == 0 {
        return None;
    }
    let den = Rational::from(-&rel[0]);
    let a = Rational::from(rel[1].clone()) / &den;
    let b = Rational::from(rel[2].clone()) / &den;
    let k = Kel { base, a, b };
    check_close(&k.embed(wp), z, prec).then_some(k)
}

/// Recognizes a rational number.
pub fn recognize_rational(z: &Complex, prec: u32) -> Option<Rational> {
    let wp = z.prec().0.max(prec);
    let rel = integer_relation(&[z.clone(), Complex::with_val(wp, 1)], prec)?;
    if rel[0] == 0 {
        return None;
    }
    let r = Rational::from((rel[1].clone(), Integer::from(-&rel[0])));
    check_close(&Complex::with_val(wp, (Float::with_val(wp, &r), 0)), z, prec).then_some(r)
}

fn check_close(a: &Complex, b: &Complex, prec: u32) -> bool {
    let d = Complex::with_val(a.prec().0.max(b.prec().0), a - b);
    let scale = log2_abs(b).max(0.0);
    log2_abs(&d) < scale - 0.75 * prec as f64
}

fn powers(z: &Complex, m: usize) -> Vec<Complex> {
    let wp = z.prec().0;
    let mut out = Vec::with_capacity(m + 1);
    let mut p = Complex::with_val(wp, 1);
    for _ in 0..=m {
        out.push(p.clone());
        p *= z;
    }
    out
}

/// Minimal polynomial over ℚ (monic, low degree first) of degree ≤ `max_deg`.
pub fn minpoly_over_q(z: &Complex, max_deg: usize, prec: u32) -> Option<Vec<Rational>> {
    for m in 1..=max_deg {
        let pw = powers(z, m);
        if let Some(rel) = integer_relation(&pw, prec) {
            if rel[m] == 0 {
                continue;
            }
            let lead = rel[m].clone();
            return Some(rel.iter().map(|a| Rational::from((a.clone(), lead.clone()))).collect());
        }
    }
    None
}

/// Minimal polynomial over K (monic, low degree first) of degree ≤ `max_deg`.
pub fn minpoly_over_k(z: &Complex, base: Base, max_deg: usize, prec: u32) -> Option<Vec<Kel>> {
    let wp = z.prec().0;
    let j = base.j_numeric(wp);
    for m in 1..=max_deg {
        let pw = powers(z, m);
        let mut zs = Vec::with_capacity(2 * m + 2);
        for p in &pw {
            zs.push(p.clone());
            zs.push(Complex::with_val(wp, p * &j));
        }
        let Some(rel) = integer_relation(&zs, prec) else { continue };
        let coeffs: Vec<Kel> = (0..=m)
            .map(|k| Kel::new(base, rel[2 * k].clone(), rel[2 * k + 1].clone()))
            .collect();
        if coeffs[m].is_zero() {
            continue;
        }
        let inv = coeffs[m].inv().ok()?;
        return Some(coeffs.iter().map(|c| c * &inv).collect());
    }
    None
}

/// Writes z in the power basis of `field` over K.
pub fn express_in(z: &Complex, field: &Arc<Field>, prec: u32) -> Option<Fe> {
    let m = field.rel_degree();
    if m == 1 {
        return recognize_in_k(z, field.base, prec).map(|k| Fe::from_kel(field, k));
    }
    let wp = z.prec().0;
    let theta = field.theta_numeric(wp)?;
    let j = field.base.j_numeric(wp);
    let mut zs = vec![z.clone()];
    for p in powers(&theta, m - 1) {
        zs.push(p.clone());
        zs.push(Complex::with_val(wp, &p * &j));
    }
    let rel = integer_relation(&zs, prec)?;
    if rel[0] == 0 {
        return None;
    }
    let den = Rational::from(-&rel[0]);
    let c: Vec<Kel> = (0..m)
        .map(|k| {
            Kel::new(
                field.base,
                Rational::from(rel[1 + 2 * k].clone()) / &den,
                Rational::from(rel[2 + 2 * k].clone()) / &den,
            )
        })
        .collect();
    let e = Fe::from_coords(field, c);
    check_close(&e.embed(wp), z, prec).then_some(e)
}

/// Recognition with the error type the pipeline expects.
pub fn recognize(z: &Complex, field: &Arc<Field>, prec: u32) -> Result<Fe> {
    express_in(z, field, prec).ok_or(Error::RecognitionFailed)
}

/// Recognizes every value in one field: K when possible, otherwise a single
/// extension K(θ′) whose primitive element is a small combination of the
/// values that are not in K.
pub fn recognize_jointly(values: &[Complex], base: Base, max_deg: usize, prec: u32) -> Option<(Arc<Field>, Vec<Fe>)> {
    let in_k: Vec<Option<Kel>> = values.iter().map(|z| recognize_in_k(z, base, prec)).collect();
    if in_k.iter().all(Option::is_some) {
        let f = Field::base(base);
        return Some((f.clone(), in_k.into_iter().map(|k| Fe::from_kel(&f, k.unwrap())).collect()));
    }
    let outside: Vec<&Complex> = values.iter().zip(&in_k).filter(|(_, k)| k.is_none()).map(|(z, _)| z).collect();
    let wp = values.iter().map(|z| z.prec().0).max().unwrap_or(prec);
    let mut candidates: Vec<Complex> = outside.iter().take(3).map(|z| (*z).clone()).collect();
    for shift in 1..=3i32 {
        let mut acc = Complex::with_val(wp, 0);
        for (k, z) in outside.iter().enumerate() {
            acc += Complex::with_val(wp, *z * (k as i32 + shift));
        }
        candidates.push(acc);
    }
    for theta in candidates {
        let Some(g) = minpoly_over_k(&theta, base, max_deg, prec) else { continue };
        let Ok(field) = Field::extension(base, g, theta) else { continue };
        let out: Option<Vec<Fe>> = values.iter().map(|z| express_in(z, &field, prec)).collect();
        if let Some(out) = out {
            return Some((field, out));
        }
    }
    None
}
