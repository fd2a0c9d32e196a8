//! Euclidean triangle groups: vertices, rotation generators, translation
//! generators and the sublattice basis attached to a permutation triple.
//!
//! Words in the generators are read as compositions of maps, so the
//! rightmost letter acts first. The permutation representation respects
//! this: the word `δ_x δ_y` goes to "apply σ_y, then σ_x".

use std::fmt;

use crate::algebra::cyclo::{Base, Kel};
use crate::error::{Error, Result};
use crate::triples::{Case, Permutation, PermutationTriple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    A,
    B,
    C,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "a",
            Side::B => "b",
            Side::C => "c",
        })
    }
}

/// z ↦ u·z + v.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub u: Kel,
    pub v: Kel,
}

impl AffineMap {
    pub fn identity(base: Base) -> Self {
        AffineMap { u: Kel::one(base), v: Kel::zero(base) }
    }

    /// Rotation by the root of unity `u` about `center`.
    pub fn rotation(u: Kel, center: &Kel) -> Self {
        let v = center - &(&u * center);
        AffineMap { u, v }
    }

    pub fn apply(&self, z: &Kel) -> Kel {
        &(&self.u * z) + &self.v
    }

    /// self ∘ other (other acts first).
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        AffineMap { u: &self.u * &other.u, v: self.apply(&other.v) }
    }

    pub fn inverse(&self) -> AffineMap {
        let ui = self.u.inv().expect("unit");
        AffineMap { v: -&(&ui * &self.v), u: ui }
    }

    pub fn is_translation(&self) -> bool {
        self.u.is_one()
    }
}

/// A word in δ_a, δ_b, δ_c, leftmost letter applied last.
pub type Word = Vec<Side>;

#[derive(Clone, Debug)]
pub struct TriangleContext {
    pub case: Case,
    pub base: Base,
    pub v_a: Kel,
    pub v_b: Kel,
    pub v_c: Kel,
    pub delta_a: AffineMap,
    pub delta_b: AffineMap,
    pub delta_c: AffineMap,
    pub omega1: Word,
    pub omega2: Word,
    /// Translation vectors of ω₁, ω₂; they span Λ_Δ.
    pub t1: Kel,
    pub t2: Kel,
}

fn word(spec: &[(Side, usize)]) -> Word {
    spec.iter().flat_map(|&(s, k)| std::iter::repeat_n(s, k)).collect()
}

/// Exact geometry for one of the three cases, with v_c = 0 and v_b = 1.
pub fn context(case: Case) -> TriangleContext {
    use Side::*;
    let base = match case {
        Case::C244 => Base::Gauss,
        _ => Base::Eisenstein,
    };
    let zero = Kel::zero(base);
    let one = Kel::one(base);
    let j = Kel::j(base);
    let (v_a, ua, ub, uc, w1, w2) = match case {
        Case::C333 => (
            j.clone(),
            Kel::j_pow(base, 2),
            Kel::j_pow(base, 2),
            Kel::j_pow(base, 2),
            word(&[(A, 1), (C, 2)]),
            word(&[(B, 1), (C, 2)]),
        ),
        Case::C236 => (
            (&j + &one).scale(&rug::Rational::from((1, 2))),
            Kel::new(base, -1, 0),
            Kel::j_pow(base, 2),
            j.clone(),
            word(&[(A, 1), (C, 3)]),
            word(&[(B, 1), (C, 4)]),
        ),
        Case::C244 => (
            (&j + &one).scale(&rug::Rational::from((1, 2))),
            Kel::new(base, -1, 0),
            j.clone(),
            j.clone(),
            word(&[(A, 1), (C, 2)]),
            word(&[(B, 1), (C, 3)]),
        ),
    };
    let delta_a = AffineMap::rotation(ua, &v_a);
    let delta_b = AffineMap::rotation(ub, &one);
    let delta_c = AffineMap::rotation(uc, &zero);
    let mut ctx = TriangleContext {
        case,
        base,
        v_a,
        v_b: one,
        v_c: zero.clone(),
        delta_a,
        delta_b,
        delta_c,
        omega1: w1,
        omega2: w2,
        t1: zero.clone(),
        t2: zero,
    };
    ctx.t1 = ctx.eval_word(&ctx.omega1).v;
    ctx.t2 = ctx.eval_word(&ctx.omega2).v;
    ctx
}

impl TriangleContext {
    pub fn delta(&self, s: Side) -> &AffineMap {
        match s {
            Side::A => &self.delta_a,
            Side::B => &self.delta_b,
            Side::C => &self.delta_c,
        }
    }

    pub fn vertex(&self, s: Side) -> &Kel {
        match s {
            Side::A => &self.v_a,
            Side::B => &self.v_b,
            Side::C => &self.v_c,
        }
    }

    pub fn eval_word(&self, w: &Word) -> AffineMap {
        let mut m = AffineMap::identity(self.base);
        for &s in w {
            m = m.compose(self.delta(s));
        }
        m
    }

    /// ρ: δ_a, δ_b, δ_c ↦ c/a, c/b, 1 (mod c).
    pub fn rho(&self, w: &Word) -> u32 {
        let (a, b, c) = self.case.orders();
        w.iter()
            .map(|s| match s {
                Side::A => c / a,
                Side::B => c / b,
                Side::C => 1,
            })
            .sum::<u32>()
            % c
    }

    /// Numeric value of m·t1 + n·t2 for rational m, n.
    pub fn lattice_point(&self, m: &rug::Rational, n: &rug::Rational) -> Kel {
        &self.t1.scale(m) + &self.t2.scale(n)
    }
}

/// π(w) for a word, with the rightmost letter applied first.
pub fn pi_word(t: &PermutationTriple, w: &Word) -> Permutation {
    let mut p = Permutation::identity(t.degree);
    for &s in w.iter().rev() {
        p = p.then(t.side(s));
    }
    p
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SublatticeBasis {
    pub n1: i64,
    pub n2: i64,
    pub m2: i64,
    pub index: i64,
}

impl SublatticeBasis {
    /// η₁ = ω₁^{n₁} ω₂^{n₂} and η₂ = ω₂^{m₂} as exponent pairs.
    pub fn eta(&self) -> [(i64, i64); 2] {
        [(self.n1, self.n2), (0, self.m2)]
    }
}

/// Row-style Hermite normal form of a set of integer pairs: returns the
/// nonzero rows (p, q), (0, r) with p, r > 0 and 0 ≤ q < r.
pub fn hnf2(rows: &[(i64, i64)]) -> Result<(i64, i64, i64)> {
    let mut rows: Vec<(i64, i64)> = rows.iter().copied().filter(|&r| r != (0, 0)).collect();
    // eliminate the first column down to one row
    let mut pivot: Option<(i64, i64)> = None;
    let mut rest: Vec<(i64, i64)> = Vec::new();
    for r in rows.drain(..) {
        if r.0 == 0 {
            rest.push(r);
            continue;
        }
        match pivot {
            None => pivot = Some(r),
            Some(p) => {
                // combine p and r into (g, *) and (0, *)
                let (g, s, t) = ext_gcd(p.0, r.0);
                let top = (g, s * p.1 + t * r.1);
                let bot = (0, (r.0 / g) * p.1 - (p.0 / g) * r.1);
                pivot = Some(top);
                rest.push(bot);
            }
        }
    }
    let (mut p, mut q) = pivot.ok_or(Error::RankDeficient)?;
    let r = rest.iter().fold(0i64, |acc, x| gcd(acc, x.1));
    if r == 0 {
        return Err(Error::RankDeficient);
    }
    if p < 0 {
        p = -p;
        q = -q;
    }
    let r = r.abs();
    q = q.rem_euclid(r);
    Ok((p, q, r))
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// (g, s, t) with s·a + t·b = g = gcd(a, b) > 0.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Basis of the lattice of (x, y) with ω₁^x ω₂^y in the stabilizer of 1.
pub fn translation_basis(t: &PermutationTriple, ctx: &TriangleContext) -> Result<SublatticeBasis> {
    let p1 = pi_word(t, &ctx.omega1);
    let p2inv = pi_word(t, &ctx.omega2).inverse();
    let tau1 = p1.cycle_of(0);
    let tau2 = p2inv.cycle_of(0);
    let (l1, l2) = (tau1.len(), tau2.len());
    let mut rows = Vec::new();
    for b1 in 0..=l1 {
        for b2 in 0..=l2 {
            if tau1[b1 % l1] == tau2[b2 % l2] {
                rows.push((b1 as i64, b2 as i64));
            }
        }
    }
    let (n1, n2, m2) = hnf2(&rows)?;
    Ok(SublatticeBasis { n1, n2, m2, index: n1 * m2 })
}

/// r = cN/d.
pub fn rotation_index(basis: &SublatticeBasis, d: usize, c: u32) -> Result<u32> {
    let num = c as i64 * basis.index;
    if d == 0 || num % d as i64 != 0 {
        return Err(Error::NonIntegral);
    }
    Ok((num / d as i64) as u32)
}
