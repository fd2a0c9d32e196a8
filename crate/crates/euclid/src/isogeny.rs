//! The isogeny between E(Δ) and E(Γ) attached to a translation sublattice.
//!
//! Analytically E(Δ) = ℂ/μΛ_Δ and E(Γ) = ℂ/(μ/N)Λ_Γ. The forward map
//! ψ̂ : z ↦ z has kernel (1/N)Λ_Γ/Λ_Δ and the dual ψ : z ↦ Nz has kernel
//! Λ_Δ/Λ_Γ scaled by μ/N. Both kernel polynomials are computed from ℘
//! values, recognized, and then certified exactly: p | f_N, the dual Vélu
//! codomain is E(Δ) scaled by 1/N, and ψ∘ψ̂ = [N] on x-coordinates.

use std::sync::Arc;

use rug::{Complex, Rational};

use crate::algebra::divpoly::{division_polynomial, mult_x};
use crate::algebra::{Base, Curve, Fe, Field, Kel, Poly, RatFn};
use crate::analytic::lattice::{scale_to_model, Lattice, Model, ScaledLattice};
use crate::analytic::recognize::recognize_jointly;
use crate::error::{Error, Result};
use crate::triangle::{SublatticeBasis, TriangleContext};
use crate::triples::Case;

/// Highest precision the retry loop will try.
pub const MAX_PREC: u32 = 4096;
/// Largest [K′ : K] the recognizer searches for.
pub const MAX_EXT_DEGREE: usize = 12;

/// Canonical representative of (x, y) in ℤ² modulo the lattice spanned by
/// (mx, −carry) and (0, my): x is reduced mod mx, carrying `carry` into y.
fn reduce_pair(x: i64, y: i64, mx: i64, my: i64, carry: i64) -> (i64, i64) {
    let xr = x.rem_euclid(mx);
    let k = (x - xr) / mx;
    (xr, (y + k * carry).rem_euclid(my))
}

/// One representative per nonzero ±-pair of a cyclic-by-cyclic group of
/// order mx·my with the given carry rule.
fn half_set(mx: i64, my: i64, carry: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for x in 0..mx {
        for y in 0..my {
            if (x, y) == (0, 0) {
                continue;
            }
            let neg = reduce_pair(-x, -y, mx, my, carry);
            if neg >= (x, y) {
                out.push((x, y));
            }
        }
    }
    out
}

/// Kernel of ψ̂ as integer pairs (s₁, s₂) standing for (1/N)(s₁η₁ + s₂η₂),
/// with 0 ≤ s₁ < m₂ and 0 ≤ s₂ < n₁. Here m₂η₁ ≡ n₂η₂ modulo NΛ_Δ.
pub fn kernel_cosets(b: &SublatticeBasis) -> Vec<(i64, i64)> {
    half_set(b.m2, b.n1, b.n2)
}

/// The pair (s₁, s₂) in coordinates over the basis of Λ_Δ.
pub fn coset_coordinates(b: &SublatticeBasis, s: (i64, i64)) -> (Rational, Rational) {
    let n = b.index;
    (
        Rational::from((s.0 * b.n1, n)),
        Rational::from((s.0 * b.n2 + s.1 * b.m2, n)),
    )
}

/// Kernel of the dual ψ as pairs (a₁, a₂) standing for (μ/N)(a₁t₁ + a₂t₂)
/// modulo (μ/N)Λ_Γ, with 0 ≤ a₁ < n₁ and 0 ≤ a₂ < m₂.
pub fn dual_cosets(b: &SublatticeBasis) -> Vec<(i64, i64)> {
    half_set(b.n1, b.m2, -b.n2)
}

/// Vélu's formulas from the kernel polynomial. Returns the codomain and the
/// x-component X of the normalized isogeny; its y-component is y·X′.
pub fn velu(e: &Curve, p: &Poly) -> Result<(Curve, RatFn)> {
    let fld = e.field().clone();
    if !p.is_monic() {
        return Err(Error::NotAKernel("kernel polynomial must be monic".into()));
    }
    if p.deg() == 0 {
        return Ok((e.clone(), RatFn::x(&fld)));
    }
    if !p.is_squarefree() {
        return Err(Error::NotAKernel("kernel polynomial is not squarefree".into()));
    }
    let f = e.rhs();
    let p2 = p.gcd(&f);
    let podd = p.div_exact(&p2)?;
    let a = &e.a;
    let b = &e.b;
    let c = |n: i64| Fe::from_int(&fld, n);
    let mut t = Fe::zero(&fld);
    let mut w = Fe::zero(&fld);
    let mut sum = RatFn::x(&fld);
    // 2-torsion roots: t_Q = 3x² + A, u_Q = 0
    if p2.deg() > 0 {
        let s = p2.power_sums(3);
        let n2 = c(p2.deg() as i64);
        t = &t + &(&s[1].scale(&Rational::from(3)) + &(a * &n2));
        w = &w + &(&s[2].scale(&Rational::from(3)) + &(a * &s[0]));
        let tq = &Poly::monomial(c(3), 2) + &Poly::constant(a.clone());
        let w1 = (&tq * &p2.derivative()).rem(&p2)?;
        sum = &sum + &RatFn::new(w1, p2.clone())?;
    }
    // other roots: t_Q = 6x² + 2A, u_Q = 4f(x_Q)
    if podd.deg() > 0 {
        let s = podd.power_sums(3);
        let n = c(podd.deg() as i64);
        t = &t + &(&s[1].scale(&Rational::from(6)) + &(a * &n).scale(&Rational::from(2)));
        // u + x·t = 10x³ + 6Ax + 4B
        let wv = &(&s[2].scale(&Rational::from(10)) + &(a * &s[0]).scale(&Rational::from(6)))
            + &(b * &n).scale(&Rational::from(4));
        w = &w + &wv;
        let tq = &Poly::monomial(c(6), 2) + &Poly::constant(a.scale(&Rational::from(2)));
        let uq = f.scale(&c(4));
        let dp = podd.derivative();
        let w1 = (&tq * &dp).rem(&podd)?;
        let w2 = (&uq * &dp).rem(&podd)?;
        let r1 = RatFn::new(w1, podd.clone())?;
        let r2 = RatFn::new(w2, podd.clone())?;
        sum = &(&sum + &r1) - &r2.derivative();
    }
    let a2 = a - &t.scale(&Rational::from(5));
    let b2 = b - &w.scale(&Rational::from(7));
    let codomain = Curve::new(a2, b2).map_err(|_| Error::NotAKernel("singular codomain".into()))?;
    Ok((codomain, sum))
}

/// The exact isogeny data for one pipeline run.
#[derive(Clone, Debug)]
pub struct IsogenyPair {
    pub n: i64,
    pub field: Arc<Field>,
    /// E(Δ) over K′.
    pub domain: Curve,
    /// E(Γ).
    pub codomain: Curve,
    /// Kernel polynomial of ψ̂.
    pub kernel: Poly,
    /// Kernel polynomial of ψ (on E(Γ)).
    pub dual_kernel: Poly,
    /// x-component of ψ̂ : E(Δ) → E(Γ).
    pub forward_x: RatFn,
    /// x-component of ψ : E(Γ) → E(Δ).
    pub dual_x: RatFn,
    /// ψ_y = y·dual_y.
    pub dual_y: RatFn,
}

/// Numeric data at one precision.
pub struct Analytic {
    pub prec: u32,
    pub delta: ScaledLattice,
    pub gamma: Lattice,
}

pub fn model(case: Case) -> Model {
    match case {
        Case::C244 => Model::Square,
        _ => Model::Hex,
    }
}

pub fn standard_curve(case: Case, f: &Arc<Field>) -> Curve {
    match case {
        Case::C244 => Curve::e_square(f),
        _ => Curve::e_hex(f),
    }
}

fn embed_point(ctx: &TriangleContext, c1: &Rational, c2: &Rational, prec: u32) -> Complex {
    ctx.lattice_point(c1, c2).embed(prec)
}

pub fn analytic_setup(ctx: &TriangleContext, b: &SublatticeBasis, prec: u32) -> Result<Analytic> {
    let t1 = ctx.t1.embed(prec + 32);
    let t2 = ctx.t2.embed(prec + 32);
    let delta = scale_to_model(&Lattice::new(&t1, &t2, prec)?, model(ctx.case))?;
    let n = b.index;
    let scale = Complex::with_val(prec + 32, &delta.mu / n);
    let eta1 = Complex::with_val(prec + 32, &t1 * b.n1) + Complex::with_val(prec + 32, &t2 * b.n2);
    let eta2 = Complex::with_val(prec + 32, &t2 * b.m2);
    let gamma = Lattice::new(
        &Complex::with_val(prec + 32, &eta1 * &scale),
        &Complex::with_val(prec + 32, &eta2 * &scale),
        prec,
    )?;
    Ok(Analytic { prec, delta, gamma })
}

fn expand(roots: &[Complex], prec: u32) -> Vec<Complex> {
    // coefficients low-first of ∏ (x − r)
    let mut c = vec![Complex::with_val(prec, 1)];
    for r in roots {
        let mut next = vec![Complex::with_val(prec, 0); c.len() + 1];
        for (k, a) in c.iter().enumerate() {
            next[k + 1] += a;
            next[k] -= Complex::with_val(prec, a * r);
        }
        c = next;
    }
    c
}

/// ℘ values of the forward kernel on μΛ_Δ.
pub fn kernel_values(an: &Analytic, ctx: &TriangleContext, b: &SublatticeBasis) -> Result<Vec<Complex>> {
    kernel_cosets(b)
        .into_iter()
        .map(|s| {
            let (c1, c2) = coset_coordinates(b, s);
            let z = embed_point(ctx, &c1, &c2, an.prec + 32);
            Ok(an.delta.wp(&z)?.0)
        })
        .collect()
}

/// ℘ values of the dual kernel on (μ/N)Λ_Γ.
pub fn dual_kernel_values(an: &Analytic, ctx: &TriangleContext, b: &SublatticeBasis) -> Result<Vec<Complex>> {
    let n = b.index;
    dual_cosets(b)
        .into_iter()
        .map(|(a1, a2)| {
            let z = embed_point(ctx, &Rational::from((a1, n)), &Rational::from((a2, n)), an.prec + 32);
            let w = Complex::with_val(an.prec + 32, &z * &an.delta.mu);
            Ok(an.gamma.wp_pair(&w)?.0)
        })
        .collect()
}

pub fn lift_curve(e: &Curve, f: &Arc<Field>) -> Curve {
    let k = |x: &Fe| Fe::from_kel(f, x.as_kel().expect("base coefficients").clone());
    Curve { a: k(&e.a), b: k(&e.b) }
}

fn to_poly(f: &Arc<Field>, mut c: Vec<Fe>) -> Poly {
    c.push(Fe::one(f));
    Poly::new(f, c)
}

/// Builds and certifies the isogeny pair at one precision.
pub fn isogeny_at(ctx: &TriangleContext, b: &SublatticeBasis, prec: u32) -> Result<IsogenyPair> {
    let base = ctx.base;
    let n = b.index;
    let k = Field::base(base);
    let e0 = standard_curve(ctx.case, &k);
    if n == 1 {
        return Ok(IsogenyPair {
            n,
            field: k.clone(),
            domain: e0.clone(),
            codomain: e0,
            kernel: Poly::one(&k),
            dual_kernel: Poly::one(&k),
            forward_x: RatFn::x(&k),
            dual_x: RatFn::x(&k),
            dual_y: RatFn::one(&k),
        });
    }
    let an = analytic_setup(ctx, b, prec)?;
    let kv = kernel_values(&an, ctx, b)?;
    let dv = dual_kernel_values(&an, ctx, b)?;
    let pc = expand(&kv, prec);
    let qc = expand(&dv, prec);
    let (np, nq) = (pc.len() - 1, qc.len() - 1);
    let mut all: Vec<Complex> = pc[..np].to_vec();
    all.extend_from_slice(&qc[..nq]);
    let (field, exact) = recognize_jointly(&all, base, MAX_EXT_DEGREE, prec).ok_or(Error::RecognitionFailed)?;
    let p = to_poly(&field, exact[..np].to_vec());
    let q = to_poly(&field, exact[np..].to_vec());
    let e = lift_curve(&e0, &field);
    if !p.divides(&division_polynomial(&e, n as usize)) {
        return Err(Error::NotAKernel("p does not divide f_N".into()));
    }
    let (eg, forward_x) = velu(&e, &p)?;
    let (e2, v) = velu(&eg, &q)?;
    let nn = Rational::from(n);
    let n2 = Rational::from(&nn * &nn);
    let n4 = Rational::from(&n2 * &n2);
    let n6 = Rational::from(&n4 * &n2);
    if e2.a != e.a.scale(&n4) || e2.b != e.b.scale(&n6) {
        return Err(Error::NoIsomorphism);
    }
    let inv_n2 = Fe::from_rational(&field, Rational::from((1, n * n)));
    let dual_x = v.scale(&inv_n2);
    let dual_y = dual_x.derivative().scale(&Fe::from_rational(&field, Rational::from((1, n))));
    if dual_x.compose(&forward_x)? != mult_x(&e, n as usize) {
        return Err(Error::NotAKernel("dual does not compose to [N]".into()));
    }
    Ok(IsogenyPair { n, field, domain: e, codomain: eg, kernel: p, dual_kernel: q, forward_x, dual_x, dual_y })
}

/// Runs `isogeny_at` with the doubling precision policy.
pub fn isogeny(ctx: &TriangleContext, b: &SublatticeBasis, start_prec: u32) -> Result<IsogenyPair> {
    let mut prec = start_prec.max(64);
    loop {
        match isogeny_at(ctx, b, prec) {
            Ok(x) => return Ok(x),
            Err(Error::RecognitionFailed | Error::AmbiguousMatch | Error::NotAKernel(_) | Error::NoIsomorphism)
                if prec < MAX_PREC =>
            {
                prec *= 2;
            }
            Err(e) => return Err(e),
        }
    }
}

/// Coefficients of a base-field curve as K elements, used by callers that
/// need to test the curve shape.
pub fn curve_kel(e: &Curve) -> Option<(Kel, Kel)> {
    Some((e.a.as_kel()?.clone(), e.b.as_kel()?.clone()))
}

pub fn base_of(case: Case) -> Base {
    match case {
        Case::C244 => Base::Gauss,
        _ => Base::Eisenstein,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangle::{context, translation_basis};
    use crate::triples::PermutationTriple;

    fn basis(n1: i64, n2: i64, m2: i64) -> SublatticeBasis {
        SublatticeBasis { n1, n2, m2, index: n1 * m2 }
    }

    #[test]
    fn example_cosets() {
        let b = basis(2, 0, 2);
        let mut got: Vec<_> = kernel_cosets(&b).into_iter().map(|s| coset_coordinates(&b, s)).collect();
        got.sort();
        let h = Rational::from((1, 2));
        let mut want = vec![(h.clone(), Rational::new()), (Rational::new(), h.clone()), (h.clone(), h)];
        want.sort();
        assert_eq!(got, want);
        assert!(kernel_cosets(&basis(1, 0, 1)).is_empty());
        assert_eq!(kernel_cosets(&basis(3, 0, 1)).len(), 1);
    }

    #[test]
    fn coset_counts_match_brute_force() {
        // brute force over Λ_Γ/NΛ_Δ for small bases, including n₂ ≠ 0
        for n1 in 1..=6i64 {
            for m2 in 1..=6i64 {
                for n2 in 0..m2 {
                    let b = basis(n1, n2, m2);
                    let n = b.index;
                    let mut pts = std::collections::BTreeSet::new();
                    for s1 in 0..n {
                        for s2 in 0..n {
                            let p = ((s1 * n1).rem_euclid(n), (s1 * n2 + s2 * m2).rem_euclid(n));
                            pts.insert(p);
                        }
                    }
                    assert_eq!(pts.len() as i64, n);
                    let nonzero: Vec<_> = pts.iter().filter(|p| **p != (0, 0)).collect();
                    let selfinv = nonzero.iter().filter(|p| ((n - p.0) % n, (n - p.1) % n) == ***p).count();
                    let want = (nonzero.len() - selfinv) / 2 + selfinv;
                    let got = kernel_cosets(&b);
                    assert_eq!(got.len(), want, "{n1} {n2} {m2}");
                    let mut seen = std::collections::BTreeSet::new();
                    for s in got {
                        let (c1, c2) = coset_coordinates(&b, s);
                        let key = |c1: &Rational, c2: &Rational| {
                            let a = Rational::from(c1 * n).numer().to_i64().unwrap().rem_euclid(n);
                            let b = Rational::from(c2 * n).numer().to_i64().unwrap().rem_euclid(n);
                            (a, b)
                        };
                        let k = key(&c1, &c2);
                        assert!(pts.contains(&k));
                        assert!(seen.insert(k));
                        assert!(seen.insert(((n - k.0) % n, (n - k.1) % n)) || ((n - k.0) % n, (n - k.1) % n) == k);
                    }
                    assert_eq!(dual_cosets(&b).len(), want);
                }
            }
        }
    }

    #[test]
    fn velu_hand_checks() {
        let kh = Field::base(Base::Eisenstein);
        let eh = Curve::e_hex(&kh);
        let (e2, _) = velu(&eh, &Poly::from_ints(&kh, &[1, 0, 0, 1])).unwrap();
        assert_eq!((e2.a, e2.b), (Fe::zero(&kh), Fe::from_int(&kh, 64)));
        let kg = Field::base(Base::Gauss);
        let es = Curve::e_square(&kg);
        let (e2, x) = velu(&es, &Poly::x(&kg)).unwrap();
        assert_eq!((e2.a.clone(), e2.b.clone()), (Fe::from_int(&kg, 4), Fe::zero(&kg)));
        assert_eq!(x.num.deg().max(x.den.deg()), 2);
        let (e3, id) = velu(&es, &Poly::one(&kg)).unwrap();
        assert_eq!(e3, es);
        assert_eq!(id, RatFn::x(&kg));
    }

    #[test]
    fn velu_dual_composes_to_two() {
        // degree-2 on E_□ and back: the dual of x-kernel is the kernel of the
        // codomain's 2-torsion point (0,0), scaled back by 1/4
        let kg = Field::base(Base::Gauss);
        let es = Curve::e_square(&kg);
        let (e2, fwd) = velu(&es, &Poly::x(&kg)).unwrap();
        let (e3, back) = velu(&e2, &Poly::x(&kg)).unwrap();
        assert_eq!(e3.a, es.a.scale(&Rational::from(16)));
        let quarter = Fe::from_rational(&kg, Rational::from((1, 4)));
        let psi = back.scale(&quarter);
        assert_eq!(psi.compose(&fwd).unwrap(), mult_x(&es, 2));
    }

    #[test]
    fn example_isogeny() {
        let t = PermutationTriple::parse("(2,4,3)", "(1,3,4)", "(1,2,3)", 4).unwrap();
        let ctx = context(Case::C333);
        let b = translation_basis(&t, &ctx).unwrap();
        let iso = isogeny(&ctx, &b, 128).unwrap();
        let f = &iso.field;
        assert!(f.is_base());
        assert_eq!(iso.kernel, Poly::from_ints(f, &[1, 0, 0, 1]));
        assert_eq!(iso.codomain.b, Fe::from_int(f, 64));
        assert!(iso.codomain.a.is_zero());
        let want_num = Poly::from_rationals(f, &[Rational::new(), Rational::from(-32), Rational::new(), Rational::new(), Rational::from((1, 16))]);
        let want = RatFn::new(want_num, Poly::from_ints(f, &[64, 0, 0, 1])).unwrap();
        assert_eq!(iso.dual_x, want);
    }
}
