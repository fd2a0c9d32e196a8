//! Serializable summary of one pipeline run.
//!
//! Field elements are written as coordinate vectors on 1, θ, θ², … over
//! K = ℚ(j); each coordinate is a pair [a, b] of rationals meaning a + b·j.

use serde::{Deserialize, Serialize};

use euclid_belyi::algebra::{Fe, Field, Kel, Poly, RatFn};
use euclid_belyi::belyi::{BelyiMap, BelyiResult};
use euclid_belyi::triples::{canonical_form, Case, PermutationTriple};

pub type Coord = [String; 2];
pub type Element = Vec<Coord>;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct FieldRecord {
    /// "Q(i)" or "Q(z6)".
    pub base: String,
    /// Monic minimal polynomial of θ over the base, low degree first;
    /// empty when the field is the base itself.
    pub minpoly: Vec<Element>,
    pub text: String,
    /// θ as decimal strings, with the number of significant digits.
    pub embedding: Option<Embedding>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Embedding {
    pub re: String,
    pub im: String,
    pub digits: usize,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct RatRecord {
    /// Coefficients from the constant term up.
    pub num: Vec<Element>,
    pub den: Vec<Element>,
    pub text: String,
}

/// φ = P/Q fiber by fiber: φ = lead·∏g^e / ∏h^e and
/// φ − 1 = lead_one·∏k^e / ∏h^e, with every g, h, k monic and squarefree.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Factored {
    pub lead: String,
    pub over_zero: Vec<(String, usize)>,
    pub over_infinity: Vec<(String, usize)>,
    pub over_one: Vec<(String, usize)>,
    pub lead_one: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct CurveRecord {
    pub a: Element,
    pub b: Element,
    pub text: String,
}

/// Genus 1: φ = a(x) + b(x)·y on the curve.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct EllipticMapRecord {
    pub curve: CurveRecord,
    pub a: RatRecord,
    pub b: RatRecord,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct VerificationRecord {
    /// "verified", "failed" or "skipped".
    pub status: String,
    pub profiles: Option<[Vec<usize>; 3]>,
    pub excess: Option<usize>,
    pub passport_match: Option<bool>,
    pub labeled_match: Option<bool>,
    pub commutes: Option<bool>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ResultRecord {
    /// Canonical representative, cycle strings for σ_a, σ_b, σ_c.
    pub triple: [String; 3],
    pub degree: usize,
    pub orders: [u32; 3],
    pub cycle_types: [Vec<usize>; 3],
    pub genus: i64,
    pub field: Option<FieldRecord>,
    pub isogeny_degree: Option<i64>,
    pub rotation_index: Option<u32>,
    pub phi: Option<RatRecord>,
    pub factored: Option<Factored>,
    pub elliptic: Option<EllipticMapRecord>,
    /// Which of σ_a, σ_b, σ_c sits over 0, 1, ∞.
    pub labels: Option<[String; 3]>,
    pub verification: VerificationRecord,
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

fn kel(k: &Kel) -> Coord {
    [k.a.to_string(), k.b.to_string()]
}

pub fn element(e: &Fe) -> Element {
    e.c.iter().map(kel).collect()
}

fn poly(p: &Poly) -> Vec<Element> {
    (0..=p.deg()).map(|k| element(&p.coeff(k))).collect()
}

fn ratfn(f: &RatFn) -> RatRecord {
    RatRecord { num: poly(&f.num), den: poly(&f.den), text: f.to_string() }
}

fn compact(p: &Poly) -> String {
    p.to_string().replace(' ', "")
}

/// Sorted by multiplicity, then degree, then text.
fn factors(p: &Poly) -> Vec<(String, usize)> {
    let mut v: Vec<(usize, usize, String)> =
        p.squarefree().iter().map(|(g, e)| (*e, g.deg(), compact(&g.monic()))).collect();
    v.sort();
    v.into_iter().map(|(e, _, g)| (g, e)).collect()
}

fn factored(phi: &RatFn) -> Factored {
    let ld = phi.den.lead();
    let ratio = |p: &Poly| p.lead().div(&ld).map(|c| c.to_string()).unwrap_or_default();
    let one = &phi.num - &phi.den;
    Factored {
        lead: ratio(&phi.num),
        over_zero: factors(&phi.num),
        over_infinity: factors(&phi.den),
        over_one: factors(&one),
        lead_one: ratio(&one),
    }
}

fn field(f: &Field) -> FieldRecord {
    let minpoly = f.g.as_ref().map(|g| g.iter().map(|k| vec![kel(k)]).collect()).unwrap_or_default();
    let digits = 30;
    let embedding = f.g.as_ref().and_then(|_| f.theta_numeric(128)).map(|t| Embedding {
        re: t.real().to_string_radix(10, Some(digits)),
        im: t.imag().to_string_radix(10, Some(digits)),
        digits,
    });
    FieldRecord { base: format!("Q({})", f.base.name()), minpoly, text: f.describe(), embedding }
}

fn triple_strings(t: &PermutationTriple) -> [String; 3] {
    t.sides().map(|p| p.to_string())
}

/// `case` is None when the run stopped before a case was settled; the
/// actual element orders are recorded then.
fn skeleton(t: &PermutationTriple, case: Option<Case>) -> ResultRecord {
    let canon = canonical_form(t);
    let (a, b, c) = match case {
        Some(c) => c.orders(),
        None => (t.sigma_a.order(), t.sigma_b.order(), t.sigma_c.order()),
    };
    let cycle_types = t.sides().map(|p| {
        let mut v = p.cycle_type();
        v.sort_unstable_by(|x, y| y.cmp(x));
        v
    });
    let d = t.degree as i64;
    let e: i64 = t.sides().iter().map(|p| d - p.num_cycles() as i64).sum();
    ResultRecord {
        triple: triple_strings(&canon),
        degree: t.degree,
        orders: [a, b, c],
        cycle_types,
        genus: (e - 2 * d + 2) / 2,
        field: None,
        isogeny_degree: None,
        rotation_index: None,
        phi: None,
        factored: None,
        elliptic: None,
        labels: None,
        verification: VerificationRecord {
            status: "skipped".into(),
            profiles: None,
            excess: None,
            passport_match: None,
            labeled_match: None,
            commutes: None,
        },
        error: None,
        timing_ms: None,
    }
}

pub fn from_result(r: &BelyiResult) -> ResultRecord {
    let mut rec = skeleton(&r.input, Some(r.passport.case));
    rec.field = Some(field(&r.field));
    rec.isogeny_degree = Some(r.isogeny.n);
    rec.rotation_index = Some(r.rotation_index);
    match &r.map {
        BelyiMap::Rational(phi) => {
            rec.phi = Some(ratfn(phi));
            rec.factored = Some(factored(phi));
        }
        BelyiMap::Elliptic { curve, map } => {
            rec.elliptic = Some(EllipticMapRecord {
                curve: CurveRecord { a: element(&curve.a), b: element(&curve.b), text: curve.to_string() },
                a: ratfn(&map.a),
                b: ratfn(&map.b),
            })
        }
    }
    rec.labels = Some(r.labels.over().map(|s| format!("sigma_{s}")));
    if let Some(v) = &r.verification {
        let ok = v.passport_match && v.commutes;
        rec.verification = VerificationRecord {
            status: if ok { "verified" } else { "failed" }.into(),
            profiles: Some(v.profiles.clone()),
            excess: Some(v.excess),
            passport_match: Some(v.passport_match),
            labeled_match: Some(v.labeled_match),
            commutes: Some(v.commutes),
        };
    }
    rec
}

/// A record for a run that stopped with an error.
pub fn from_error(t: &PermutationTriple, case: Option<Case>, err: &str, verification_failed: bool) -> ResultRecord {
    let mut rec = skeleton(t, case);
    rec.error = Some(err.to_string());
    if verification_failed {
        rec.verification.status = "failed".into();
    }
    rec
}
