//! From a Euclidean triple to an explicit Belyi map.
//!
//! The fixed quotient α : E(Δ) → ℙ¹ by the rotations about 0 is pulled back
//! along the dual isogeny ψ : E(Γ) → E(Δ). When the rotation part of Γ sits
//! at a vertex v_O other than 0, α is first precomposed with translation by
//! the image P_O of v_O, which moves the rotation centre of Γ to the origin
//! of E(Γ). The pullback ξ is then invariant under [ζ_r] and is a function
//! of the monomial β ∈ {x, y, x², y²}; φ is read off from the x^r structure
//! of ξ's canonical form.

use std::sync::Arc;

use rug::{Complex, Rational};

use crate::algebra::funcfield::translation;
use crate::algebra::{Base, Curve, Fe, Field, FnElt, Kel, Point, Poly, RatFn};
use crate::analytic::lattice::dist_log2;
use crate::error::{Error, Result};
use crate::isogeny::{analytic_setup, isogeny, IsogenyPair};
use crate::triangle::{context, rotation_index, translation_basis, Side, SublatticeBasis, TriangleContext};
use crate::triples::{euclidean_case, preprocess, validate, Case, Passport, Permutation, PermutationTriple};

#[derive(Clone, Debug)]
pub struct Options {
    /// Starting precision in bits; doubled on recognition failures.
    pub precision: u32,
    pub verify: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { precision: 128, verify: true }
    }
}

/// Which σ lies over 0, 1 and ∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BranchLabels {
    pub zero: Side,
    pub one: Side,
    pub infinity: Side,
}

impl BranchLabels {
    pub fn over(&self) -> [Side; 3] {
        [self.zero, self.one, self.infinity]
    }
}

#[derive(Clone, Debug)]
pub enum BelyiMap {
    /// Genus 0: φ(u) as a reduced rational function.
    Rational(RatFn),
    /// Genus 1: φ = α∘ψ on E(Γ).
    Elliptic { curve: Curve, map: FnElt },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub degree: usize,
    /// Ramification profiles over 0, 1, ∞, each sorted in descending order.
    pub profiles: [Vec<usize>; 3],
    /// Σ (e − 1) over the three fibers.
    pub excess: usize,
    /// Profiles equal the passport as a multiset of multisets.
    pub passport_match: bool,
    /// Profile over each value equals the cycle type of the σ recorded there.
    pub labeled_match: bool,
    /// φ∘β = ξ.
    pub commutes: bool,
    /// Point counts of regular fibers (genus 1 only).
    pub regular_fibers: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct BelyiResult {
    pub input: PermutationTriple,
    pub passport: Passport,
    /// The triple after relabeling so that sheet 1 sees the rotation part.
    pub triple: PermutationTriple,
    pub conjugator: Permutation,
    pub rotation_index: u32,
    /// Side of the vertex v_O carrying the rotation part.
    pub vertex: Side,
    pub basis: SublatticeBasis,
    pub isogeny: IsogenyPair,
    pub field: Arc<Field>,
    /// Image of v_O on E(Δ).
    pub vertex_point: Point,
    /// ξ = α∘τ_{P_O}∘ψ on E(Γ).
    pub xi: FnElt,
    pub map: BelyiMap,
    pub labels: BranchLabels,
    pub dual_sign_flipped: bool,
    pub verification: Option<Verification>,
}

impl BelyiResult {
    pub fn genus(&self) -> i64 {
        self.passport.genus
    }

    pub fn degree(&self) -> usize {
        self.input.degree
    }
}

/// The quotient of E(Δ) by rotations about 0, over `f`.
pub fn alpha(case: Case, e: &Curve) -> FnElt {
    let f = e.field();
    let x = FnElt::x(e);
    let y = FnElt::y(e);
    match case {
        Case::C333 => {
            let half = Fe::from_rational(f, Rational::from((1, 2)));
            let one = FnElt::constant(Fe::one(f), &e.rhs());
            &(&y + &one) * &FnElt::constant(half, &e.rhs())
        }
        Case::C244 => &x * &x,
        Case::C236 => &y * &y,
    }
}

/// Multiplicities of α over 0, 1, ∞.
pub fn alpha_profiles(case: Case) -> [Vec<usize>; 3] {
    match case {
        Case::C333 => [vec![3], vec![3], vec![3]],
        Case::C244 => [vec![4], vec![2, 2], vec![4]],
        Case::C236 => [vec![2, 2, 2], vec![3, 3], vec![6]],
    }
}

/// α′ = α∘τ_P.
pub fn alpha_prime(case: Case, e: &Curve, p: &Point) -> Result<FnElt> {
    let a = alpha(case, e);
    if p.is_infinity() {
        return Ok(a);
    }
    let (xs, ys) = translation(e, p)?;
    a.substitute(&xs, &ys)
}

/// Points of E(Δ) fixed by a nontrivial rotation: candidates for vertex images.
fn special_points(case: Case, f: &Arc<Field>) -> Vec<Point> {
    let k = |a: i64, b: i64| Fe::from_kel(f, Kel::new(f.base, a, b));
    let z = Fe::zero(f);
    match case {
        Case::C244 => vec![Point::new(k(0, 0), z.clone()), Point::new(k(1, 0), z.clone()), Point::new(k(-1, 0), z)],
        _ => vec![
            Point::new(k(-1, 0), z.clone()),
            Point::new(k(1, -1), z.clone()),
            Point::new(k(0, 1), z),
            Point::new(k(0, 0), k(1, 0)),
            Point::new(k(0, 0), k(-1, 0)),
        ],
    }
}

/// The exact image on E(Δ) of a vertex of the base triangle.
pub fn vertex_point(ctx: &TriangleContext, b: &SublatticeBasis, side: Side, f: &Arc<Field>) -> Result<Point> {
    let prec = 128;
    let an = analytic_setup(ctx, b, prec)?;
    let v = ctx.vertex(side).embed(prec + 32);
    let (x, y) = match an.delta.wp(&v) {
        Err(Error::LatticePoint) => return Ok(Point::Infinity),
        r => r?,
    };
    let mut best: Option<(f64, Point)> = None;
    let mut second = f64::INFINITY;
    for p in special_points(ctx.case, f) {
        let (px, py) = (p.x().unwrap().embed(prec), p.y().unwrap().embed(prec));
        let dist = dist_log2(&px, &x).max(dist_log2(&py, &y));
        match &best {
            Some((d, _)) if *d <= dist => second = second.min(dist),
            _ => {
                if let Some((d, _)) = &best {
                    second = second.min(*d);
                }
                best = Some((dist, p));
            }
        }
    }
    let (d, p) = best.ok_or(Error::AmbiguousMatch)?;
    if d > -(prec as f64) / 2.0 || second < -8.0 {
        return Err(Error::AmbiguousMatch);
    }
    Ok(p)
}

/// Polynomial q with p(x) = q(x^r), if p has that shape.
pub fn deflate(p: &Poly, r: usize) -> Option<Poly> {
    let mut c = Vec::with_capacity(p.c.len() / r + 1);
    for (k, a) in p.c.iter().enumerate() {
        if k % r == 0 {
            c.push(a.clone());
        } else if !a.is_zero() {
            return None;
        }
    }
    Some(Poly::new(&p.field, c))
}

fn deflate_ratfn(f: &RatFn, r: usize) -> Result<RatFn> {
    let n = deflate(&f.num, r).ok_or(Error::NotInvariant)?;
    let d = deflate(&f.den, r).ok_or(Error::NotInvariant)?;
    RatFn::new(n, d)
}

/// The invariant β : E(Γ) → ℙ¹ for rotation index r.
pub fn beta(r: u32, e: &Curve) -> Result<FnElt> {
    let x = FnElt::x(e);
    let y = FnElt::y(e);
    Ok(match r {
        1 => x,
        2 => x,
        3 => y,
        4 => &x * &x,
        6 => &y * &y,
        _ => return Err(Error::UnsupportedCase),
    })
}

fn check_shape(r: u32, e: &Curve) -> Result<()> {
    match r {
        3 | 6 if !e.a.is_zero() => Err(Error::ShapeViolation(format!("r = {r} needs A = 0, got {e}"))),
        4 if !e.b.is_zero() => Err(Error::ShapeViolation(format!("r = 4 needs B = 0, got {e}"))),
        _ => Ok(()),
    }
}

/// φ with φ∘β = ξ, read off from the canonical form of ξ.
pub fn substitute(xi: &FnElt, r: u32, e: &Curve) -> Result<RatFn> {
    check_shape(r, e)?;
    let f = e.field();
    match r {
        2 => {
            if !xi.b.is_zero() {
                return Err(Error::NotInvariant);
            }
            Ok(xi.a.clone())
        }
        4 => {
            if !xi.b.is_zero() {
                return Err(Error::NotInvariant);
            }
            deflate_ratfn(&xi.a, 2)
        }
        3 => {
            // x³ = u² − B with u = y
            let a = deflate_ratfn(&xi.a, 3)?;
            let b = deflate_ratfn(&xi.b, 3)?;
            let sub = RatFn::from_poly(Poly::new(f, vec![-&e.b, Fe::zero(f), Fe::one(f)]));
            let u = RatFn::x(f);
            Ok(&a.compose(&sub)? + &(&u * &b.compose(&sub)?))
        }
        6 => {
            if !xi.b.is_zero() {
                return Err(Error::NotInvariant);
            }
            // x³ = u − B with u = y²
            let a = deflate_ratfn(&xi.a, 3)?;
            let sub = RatFn::from_poly(Poly::new(f, vec![-&e.b, Fe::one(f)]));
            a.compose(&sub)
        }
        _ => Err(Error::UnsupportedCase),
    }
}

/// r(F) for a function-field element F.
pub fn compose_with(phi: &RatFn, g: &FnElt) -> Result<FnElt> {
    let horner = |p: &Poly| -> FnElt {
        let mut acc = FnElt::constant(Fe::zero(g.field()), &g.f);
        for c in p.c.iter().rev() {
            acc = &(&acc * g) + &FnElt::constant(c.clone(), &g.f);
        }
        acc
    };
    horner(&phi.num).div(&horner(&phi.den))
}

fn expand_profile(sqf: &[(Poly, usize)], out: &mut Vec<usize>) {
    for (g, e) in sqf {
        for _ in 0..g.deg() {
            out.push(*e);
        }
    }
}

/// Profiles over 0, 1, ∞ of a rational function, including u = ∞.
pub fn rational_profiles(phi: &RatFn) -> Result<[Vec<usize>; 3]> {
    let (n, d) = (&phi.num, &phi.den);
    let (dn, dd) = (n.deg(), d.deg());
    let deg = dn.max(dd);
    let mut zero = Vec::new();
    let mut inf = Vec::new();
    let mut one = Vec::new();
    if !n.is_zero() {
        expand_profile(&n.squarefree(), &mut zero);
    }
    expand_profile(&d.squarefree(), &mut inf);
    let m = n - d;
    if m.is_zero() {
        return Err(Error::ProfileMismatch("φ is constant".into()));
    }
    expand_profile(&m.squarefree(), &mut one);
    if dd > dn {
        zero.push(dd - dn);
    } else if dn > dd {
        inf.push(dn - dd);
    } else if m.deg() < deg {
        one.push(deg - m.deg());
    }
    let mut out = [zero, one, inf];
    for p in out.iter_mut() {
        p.sort_unstable_by(|a, b| b.cmp(a));
    }
    Ok(out)
}

fn sorted_types(mut v: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for p in v.iter_mut() {
        p.sort_unstable_by(|a, b| b.cmp(a));
    }
    v.sort();
    v
}

/// Number of points of E with ξ = t, for a regular value t.
pub fn fiber_count(xi: &FnElt, t: &Fe) -> Result<usize> {
    let fld = xi.field();
    let am = &xi.a - &RatFn::constant(t.clone());
    let (an, ad) = (&am.num, &am.den);
    let (bn, bd) = (&xi.b.num, &xi.b.den);
    // (a − t)² − b²f with denominators cleared
    let lhs = &(an * an) * &(bd * bd);
    let rhs = &(&(bn * bn) * &(ad * ad)) * &xi.f;
    let norm = &lhs - &rhs;
    if norm.is_zero() {
        return Err(Error::InternalInconsistency("degenerate fiber".into()));
    }
    let mut s = Poly::one(fld);
    for (g, _) in norm.squarefree() {
        s = &s * &g;
    }
    let poles = ad * bd;
    let s = s.div_exact(&s.gcd(&poles))?;
    let mut count = s.deg();
    if !xi.b.is_zero() {
        // where b vanishes both ±y lie in the fiber
        let g = s.gcd(bn);
        count += g.deg() - g.gcd(&xi.f).deg();
    } else {
        count = 2 * s.deg() - s.gcd(&xi.f).deg();
    }
    Ok(count)
}

fn labels_for(case: Case, e: &Curve, ctx: &TriangleContext, b: &SublatticeBasis) -> Result<BranchLabels> {
    let a = alpha(case, e);
    let f = e.field();
    let value = |s: Side| -> Result<Fe> {
        let p = vertex_point(ctx, b, s, f)?;
        a.eval(&p)
    };
    let va = value(Side::A)?;
    let vb = value(Side::B)?;
    let zero = Fe::zero(f);
    let one = Fe::one(f);
    if va == zero && vb == one {
        Ok(BranchLabels { zero: Side::A, one: Side::B, infinity: Side::C })
    } else if va == one && vb == zero {
        Ok(BranchLabels { zero: Side::B, one: Side::A, infinity: Side::C })
    } else {
        Err(Error::InternalInconsistency(format!("vertex values {va}, {vb}")))
    }
}

/// Degree-N setup shared by every stage.
struct Setup {
    passport: Passport,
    triple: PermutationTriple,
    conjugator: Permutation,
    r: u32,
    side: Side,
    ctx: TriangleContext,
    basis: SublatticeBasis,
}

fn setup(t: &PermutationTriple, case: Option<Case>) -> Result<Setup> {
    validate(t).map_err(|e| e.at("validate"))?;
    let passport = euclidean_case(t, case).map_err(|e| e.at("passport"))?;
    let case = passport.case;
    let ctx = context(case);
    let basis0 = translation_basis(t, &ctx).map_err(|e| e.at("translation basis"))?;
    let r = rotation_index(&basis0, t.degree, case.orders().2).map_err(|e| e.at("rotation index"))?;
    if r == 1 {
        return Ok(Setup {
            passport,
            triple: t.clone(),
            conjugator: Permutation::identity(t.degree),
            r,
            side: Side::C,
            ctx,
            basis: basis0,
        });
    }
    let pre = preprocess(t, case).map_err(|e| e.at("preprocess"))?;
    let basis = translation_basis(&pre.triple, &ctx).map_err(|e| e.at("translation basis"))?;
    if basis.index != basis0.index {
        return Err(Error::InternalInconsistency("relabeling changed the index".into()).at("preprocess"));
    }
    Ok(Setup { passport, triple: pre.triple, conjugator: pre.conjugator, r, side: pre.side, ctx, basis })
}

pub fn run_pipeline(t: &PermutationTriple, case: Option<Case>, opts: &Options) -> Result<BelyiResult> {
    let s = setup(t, case)?;
    let case = s.passport.case;
    let iso = isogeny(&s.ctx, &s.basis, opts.precision).map_err(|e| e.at("isogeny"))?;
    let field = iso.field.clone();
    let e_delta = iso.domain.clone();
    let e_gamma = iso.codomain.clone();
    let p_o = if s.r == 1 {
        Point::Infinity
    } else {
        vertex_point(&s.ctx, &s.basis, s.side, &field).map_err(|e| e.at("align"))?
    };
    let labels = labels_for(case, &e_delta, &s.ctx, &s.basis).map_err(|e| e.at("align"))?;
    let alpha_p = alpha_prime(case, &e_delta, &p_o).map_err(|e| e.at("alpha"))?;
    let fg = e_gamma.rhs();
    let xs = FnElt::from_ratfn(iso.dual_x.clone(), &fg);
    let mut flipped = false;
    let (xi, map) = loop {
        let sign = if flipped { -&iso.dual_y } else { iso.dual_y.clone() };
        let ys = FnElt::new(RatFn::zero(&field), sign, &fg);
        let xi = alpha_p.substitute(&xs, &ys).map_err(|e| e.at("substitute"))?;
        if s.r == 1 {
            break (xi.clone(), BelyiMap::Elliptic { curve: e_gamma.clone(), map: xi });
        }
        match substitute(&xi, s.r, &e_gamma) {
            Ok(phi) => break (xi, BelyiMap::Rational(phi)),
            Err(Error::NotInvariant) if !flipped => flipped = true,
            Err(e) => return Err(e.at("substitute")),
        }
    };
    let mut result = BelyiResult {
        input: t.clone(),
        passport: s.passport,
        triple: s.triple,
        conjugator: s.conjugator,
        rotation_index: s.r,
        vertex: s.side,
        basis: s.basis,
        isogeny: iso,
        field,
        vertex_point: p_o,
        xi,
        map,
        labels,
        dual_sign_flipped: flipped,
        verification: None,
    };
    if opts.verify {
        result.verification = Some(verify(&result).map_err(|e| e.at("verify"))?);
    }
    Ok(result)
}

/// Checks degree, ramification, Riemann–Hurwitz and commutativity.
pub fn verify(res: &BelyiResult) -> Result<Verification> {
    let d = res.degree();
    let genus = res.genus();
    let case = res.passport.case;
    let types = res.passport.cycle_types.clone();
    let (profiles, commutes, regular_fibers) = match &res.map {
        BelyiMap::Rational(phi) => {
            let deg = phi.num.deg().max(phi.den.deg());
            if deg != d {
                return Err(Error::ProfileMismatch(format!("deg φ = {deg}, expected {d}")));
            }
            let b = beta(res.rotation_index, &res.isogeny.codomain)?;
            let commutes = compose_with(phi, &b)? == res.xi;
            (rational_profiles(phi)?, commutes, Vec::new())
        }
        BelyiMap::Elliptic { map, .. } => {
            // ψ is an unramified isogeny of degree N, so every α-multiplicity
            // over a branch value occurs N times upstairs
            let n = res.isogeny.n as usize;
            let mut out = alpha_profiles(case);
            for p in out.iter_mut() {
                *p = p.iter().flat_map(|e| std::iter::repeat_n(*e, n)).collect();
            }
            let f = &res.field;
            let mut counts = Vec::new();
            for (a, b) in [(2, 7), (-3, 5), (5, 11)] {
                counts.push(fiber_count(map, &Fe::from_rational(f, Rational::from((a, b))))?);
            }
            (out, true, counts)
        }
    };
    for (k, p) in profiles.iter().enumerate() {
        let sum: usize = p.iter().sum();
        if sum != d {
            return Err(Error::ProfileMismatch(format!("fiber {k} has total multiplicity {sum}, expected {d}")));
        }
    }
    if regular_fibers.iter().any(|&c| c != d) {
        return Err(Error::ProfileMismatch(format!("regular fibers have {regular_fibers:?} points, expected {d}")));
    }
    let excess: usize = profiles.iter().flatten().map(|e| e - 1).sum();
    let want_excess = 2 * d as i64 + 2 * genus - 2;
    if excess as i64 != want_excess {
        return Err(Error::ProfileMismatch(format!("Σ(e − 1) = {excess}, expected {want_excess}")));
    }
    let passport_match = sorted_types(profiles.to_vec()) == sorted_types(types.to_vec());
    if !passport_match {
        return Err(Error::ProfileMismatch(format!("profiles {profiles:?} against passport {types:?}")));
    }
    if !commutes {
        return Err(Error::ProfileMismatch("φ∘β differs from α∘ψ".into()));
    }
    let side_type = |s: Side| -> Vec<usize> {
        let mut v = types[match s {
            Side::A => 0,
            Side::B => 1,
            Side::C => 2,
        }]
        .clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    };
    let labeled_match = res.labels.over().iter().zip(&profiles).all(|(s, p)| side_type(*s) == *p);
    Ok(Verification { degree: d, profiles, excess, passport_match, labeled_match, commutes, regular_fibers })
}

/// Numeric values of ξ at a point of E(Γ), for callers that want spot checks.
pub fn eval_numeric(xi: &FnElt, x: &Complex, y: &Complex) -> Complex {
    let a = xi.a.eval_numeric(x);
    let b = xi.b.eval_numeric(x);
    let prec = x.prec().0;
    Complex::with_val(prec, &b * y) + a
}

/// Base field of a case.
pub fn base_field(case: Case) -> Arc<Field> {
    Field::base(match case {
        Case::C244 => Base::Gauss,
        _ => Base::Eisenstein,
    })
}
