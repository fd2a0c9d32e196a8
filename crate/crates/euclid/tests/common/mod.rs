#![allow(dead_code)]

use euclid_belyi::algebra::divpoly::mult_x;
use euclid_belyi::algebra::Poly;
use euclid_belyi::belyi::{beta, eval_numeric, run_pipeline, BelyiMap, BelyiResult, Options};
use euclid_belyi::triples::{Case, Permutation, PermutationTriple};
use rug::{Complex, Float};

pub fn tetra_333() -> PermutationTriple {
    PermutationTriple::parse("(2,4,3)", "(1,3,4)", "(1,2,3)", 4).unwrap()
}

/// Printed with σ_c acting first, hence the inversion.
pub fn hex_236() -> PermutationTriple {
    PermutationTriple::parse("(1,4)(2,5)(3,6)", "(1,3,5)", "(1,4,5,2,3,6)", 6).unwrap().inverted()
}

pub fn gauss_244() -> PermutationTriple {
    PermutationTriple::parse("(1,9)(2,8)(3,7)(4,6)", "(1,6)(2,9,10,3)(4,5,8,7)", "(1,2,5,4)(3,8)(6,7,10,9)", 10)
        .unwrap()
        .inverted()
}

/// Monic squarefree factors of p with multiplicities, as sorted strings.
pub fn factored(p: &Poly) -> Vec<String> {
    let mut v: Vec<String> = p.squarefree().iter().map(|(g, e)| format!("({})^{e}", g.monic())).collect();
    v.sort();
    v
}

pub fn strs(v: &[&str]) -> Vec<String> {
    let mut v: Vec<String> = v.iter().map(|s| s.to_string()).collect();
    v.sort();
    v
}

fn cycle_count(p: &Permutation) -> usize {
    let d = p.degree();
    let mut seen = vec![false; d];
    let mut n = 0;
    for s in 0..d {
        if !seen[s] {
            n += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = p.image(x);
            }
        }
    }
    n
}

/// 2g − 2 = −2d + Σ (d − #cycles), computed straight from the permutations.
pub fn genus_oracle(t: &PermutationTriple) -> i64 {
    let d = t.degree as i64;
    let e: i64 = t.sides().iter().map(|p| d - cycle_count(p) as i64).sum();
    (e - 2 * d + 2) / 2
}

/// Number of distinct roots of p, via gcd with the derivative.
fn distinct_roots(p: &Poly) -> usize {
    if p.deg() == 0 {
        return 0;
    }
    p.deg() - p.gcd(&p.derivative()).deg()
}

/// Checks one pipeline run against oracles that do not reuse the
/// library's own profile extraction. Returns a description of the first
/// violated property.
pub fn check_run(t: &PermutationTriple, case: Case) -> Result<BelyiResult, String> {
    let d = t.degree;
    let res = run_pipeline(t, Some(case), &Options::default()).map_err(|e| e.to_string())?;
    let v = res.verification.clone().ok_or("no verification")?;
    let g = genus_oracle(t);
    // (vi) genus 1 exactly when there is no rotation part
    if (g == 1) != (res.rotation_index == 1) {
        return Err(format!("genus {g} but r = {}", res.rotation_index));
    }
    // (v) ψ∘ψ̂ is multiplication by N on x
    let iso = &res.isogeny;
    let comp = iso.dual_x.compose(&iso.forward_x).map_err(|e| e.to_string())?;
    if comp != mult_x(&iso.domain, iso.n as usize) {
        return Err("ψ∘ψ̂ differs from [N]".into());
    }
    if !v.passport_match || !v.commutes {
        return Err(format!("verification flags {v:?}"));
    }
    match &res.map {
        BelyiMap::Rational(phi) => {
            // (i) degree
            let deg = phi.num.deg().max(phi.den.deg());
            if deg != d {
                return Err(format!("deg φ = {deg}"));
            }
            // (ii)/(iii) via distinct preimage counts: #φ⁻¹(t) = #cycles of
            // the permutation over t, so Σ(e − 1) = 2d − 2
            let inf_extra = |lead_gap: bool| usize::from(lead_gap);
            let diff = &phi.num - &phi.den;
            let n0 = distinct_roots(&phi.num) + inf_extra(phi.num.deg() < phi.den.deg());
            let n1 = distinct_roots(&diff) + inf_extra(diff.deg() < phi.den.deg());
            let ninf = distinct_roots(&phi.den) + inf_extra(phi.den.deg() < d);
            let mut counts = vec![n0, n1, ninf];
            counts.sort();
            let mut want: Vec<usize> = t.sides().iter().map(|p| cycle_count(p)).collect();
            want.sort();
            if counts != want {
                return Err(format!("fiber sizes {counts:?}, cycle counts {want:?}"));
            }
            let excess: usize = 3 * d - counts.iter().sum::<usize>();
            if excess != 2 * d - 2 {
                return Err(format!("excess {excess}"));
            }
            // (iv) numerically at a random point of E(Γ), on top of the
            // exact check inside verify
            let prec = 256;
            let e = &iso.codomain;
            let x = Complex::with_val(prec, (Float::with_val(prec, 0.3717), Float::with_val(prec, -1.113)));
            let fx = e.rhs().eval_numeric(&x);
            let y = Complex::with_val(prec, fx.sqrt_ref());
            let b = beta(res.rotation_index, e).map_err(|e| e.to_string())?;
            let lhs = phi.eval_numeric(&eval_numeric(&b, &x, &y));
            let rhs = eval_numeric(&res.xi, &x, &y);
            let err = Complex::with_val(prec, &lhs - &rhs);
            let scale = Float::with_val(64, rhs.abs_ref()).to_f64().max(1.0);
            if Float::with_val(64, err.abs_ref()).to_f64() > scale * 1e-40 {
                return Err("φ∘β ≠ ξ numerically".into());
            }
        }
        BelyiMap::Elliptic { .. } => {
            if g != 1 {
                return Err("elliptic output for genus 0".into());
            }
            if v.regular_fibers.iter().any(|&c| c != d) || v.regular_fibers.is_empty() {
                return Err(format!("regular fibers {:?}", v.regular_fibers));
            }
            let excess: usize = v.profiles.iter().flatten().map(|e| e - 1).sum();
            if excess != 2 * d {
                return Err(format!("excess {excess}"));
            }
        }
    }
    Ok(res)
}
