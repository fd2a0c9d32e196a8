//! One line per acceptance criterion. Run with
//! `cargo test -p euclid-belyi --test acceptance`.

mod common;

use std::time::{Duration, Instant};

use common::*;
use euclid_belyi::algebra::divpoly::division_polynomial;
use euclid_belyi::algebra::{Base, Curve, Fe, Field, Kel, Poly, RatFn};
use euclid_belyi::analytic::lattice::dist_log2;
use euclid_belyi::analytic::{recognize_in_k, Lattice};
use euclid_belyi::belyi::{run_pipeline, BelyiMap, Options};
use euclid_belyi::isogeny::velu;
use euclid_belyi::triples::{enumerate_triples, Case, PermutationTriple};
use euclid_belyi::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::{Complex, Rational};

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn rational(map: &BelyiMap) -> Result<&RatFn, String> {
    match map {
        BelyiMap::Rational(phi) => Ok(phi),
        BelyiMap::Elliptic { .. } => Err("expected a rational map".into()),
    }
}

fn fibers(phi: &RatFn) -> Vec<Vec<String>> {
    let mut v = vec![factored(&phi.num), factored(&phi.den), factored(&(&phi.num - &phi.den))];
    v.sort();
    v
}

fn example_421() -> Check {
    let res = check_run(&tetra_333(), Case::C333)?;
    let f = &res.field;
    let iso = &res.isogeny;
    ensure(iso.kernel == Poly::from_ints(f, &[1, 0, 0, 1]), format!("kernel {}", iso.kernel))?;
    ensure(iso.codomain.a.is_zero() && iso.codomain.b == Fe::from_int(f, 64), format!("E(Γ) {}", iso.codomain))?;
    let num = Poly::new(f, vec![Fe::zero(f), Fe::from_int(f, -32), Fe::zero(f), Fe::zero(f), Fe::from_rational(f, Rational::from((1, 16)))]);
    let want = RatFn::new(num, Poly::from_ints(f, &[64, 0, 0, 1])).unwrap();
    ensure(iso.dual_x == want, format!("ψ_x {}", iso.dual_x))?;
    let phi = rational(&res.map)?;
    let mut want = vec![strs(&["(x - 8)^1", "(x + 24)^3"]), strs(&["(x)^3"]), strs(&["(x + 8)^1", "(x - 24)^3"])];
    want.sort();
    ensure(fibers(phi) == want, format!("fibers {:?}", fibers(phi)))?;
    Ok(format!("φ = {phi}"))
}

fn example_422() -> Check {
    let res = check_run(&hex_236(), Case::C236)?;
    let phi = rational(&res.map)?;
    let mut want = vec![
        strs(&["(x^3 + 81*x^2 + 243*x + 2187)^2"]),
        strs(&["(x - 9)^6"]),
        strs(&["(x^2 + 27)^1", "(x + 9)^3"]),
    ];
    want.sort();
    ensure(fibers(phi) == want, format!("fibers {:?}", fibers(phi)))?;
    Ok(format!("labels {:?}", res.labels.over()))
}

fn example_423() -> Check {
    let res = check_run(&gauss_244(), Case::C244)?;
    ensure(res.field.is_base() && res.field.base == Base::Gauss, format!("field {}", res.field.describe()))?;
    let v = res.verification.unwrap();
    let mut got = v.profiles.to_vec();
    got.sort();
    let mut want = vec![vec![4, 4, 2], vec![4, 4, 2], vec![2, 2, 2, 2, 1, 1]];
    want.sort();
    ensure(got == want, format!("profiles {got:?}"))?;
    Ok(format!("field {}", res.field.describe()))
}

fn property_sweep() -> Check {
    let mut count = 0;
    let mut genus_one = 0;
    for case in Case::ALL {
        for d in 1..=8 {
            for t in enumerate_triples(d, case) {
                let res = check_run(&t, case).map_err(|e| format!("{case:?} d = {d} {t:?}: {e}"))?;
                count += 1;
                genus_one += usize::from(res.rotation_index == 1);
            }
        }
    }
    Ok(format!("{count} triples, {genus_one} of genus 1"))
}

fn unit_oracles() -> Check {
    // Vélu on E_□ with kernel x
    let k = Field::base(Base::Gauss);
    let (e2, _) = velu(&Curve::e_square(&k), &Poly::x(&k)).map_err(|e| e.to_string())?;
    ensure(e2.a == Fe::from_int(&k, 4) && e2.b.is_zero(), format!("Vélu gave {e2}"))?;
    // division polynomial degrees
    let e = Curve::new(Fe::from_int(&k, 2), Fe::from_int(&k, 3)).unwrap();
    for n in 2..=10usize {
        let two = if n % 2 == 0 { 3 } else { 0 };
        let want = (n * n - 1 - two) / 2 + two;
        let got = division_polynomial(&e, n).deg();
        ensure(got == want, format!("deg f_{n} = {got}, expected {want}"))?;
    }
    // ℘′² = 4℘³ − g₂℘ − g₃ at 128 bits
    let prec = 128;
    let c = |re: f64, im: f64| Complex::with_val(prec, (re, im));
    let lat = Lattice::new(&c(1.0, 0.0), &c(0.3, 1.1), prec).map_err(|e| e.to_string())?;
    let (g2, g3) = lat.eisenstein();
    let mut worst = f64::NEG_INFINITY;
    for z in [c(0.1, 0.2), c(-0.37, 0.61), c(1.7, -2.3), c(0.45, 0.05)] {
        let (p, d) = lat.wp_pair(&z).map_err(|e| e.to_string())?;
        let lhs = Complex::with_val(prec, d.square_ref());
        let rhs = Complex::with_val(prec, p.square_ref()) * &p * 4u32 - Complex::with_val(prec, &g2 * &p) - &g3;
        let scale = Complex::with_val(64, lhs.abs_ref()).real().to_f64().max(1.0).log2();
        worst = worst.max(dist_log2(&lhs, &rhs) - scale);
    }
    ensure(worst < -64.0, format!("℘ residual 2^{worst:.1}"))?;
    // recognize ∘ embed
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..100 {
        let base = if i % 2 == 0 { Base::Gauss } else { Base::Eisenstein };
        let z = Kel::new(
            base,
            Rational::from((rng.gen_range(-500i64..500), rng.gen_range(1i64..60))),
            Rational::from((rng.gen_range(-500i64..500), rng.gen_range(1i64..60))),
        );
        let got = recognize_in_k(&z.embed(256), base, 256);
        ensure(got.as_ref() == Some(&z), format!("recognized {got:?} for {z:?}"))?;
    }
    Ok(format!("℘ residual 2^{worst:.1}"))
}

fn degree_twelve() -> Check {
    let t = PermutationTriple::parse(
        "(2,3)(5,7)(6,9)(8,10)(11,12)",
        "(1,2,4,6)(3,5,8,11)(7,9,12,10)",
        "(1,9,5,2)(3,12,6,4)(7,8)(10,11)",
        12,
    )
    .unwrap();
    let res = check_run(&t, Case::C244)?;
    Ok(format!("N = {}, field {}", res.isogeny.n, res.field.describe()))
}

fn negatives() -> Check {
    let opts = Options::default();
    let root = |e: Error| match e {
        Error::Stage { source, .. } => *source,
        e => e,
    };
    let spherical = PermutationTriple::parse("(1,2)(3,4)", "(1,2,3)", "(1,4,3)", 4).unwrap();
    let e = root(run_pipeline(&spherical, None, &opts).unwrap_err());
    ensure(matches!(e, Error::NotEuclidean(_)), format!("spherical: {e}"))?;
    let broken = PermutationTriple::parse("(1,2)", "id", "id", 2).unwrap();
    let e = root(run_pipeline(&broken, None, &opts).unwrap_err());
    ensure(e == Error::RelationViolated, format!("relation: {e}"))?;
    let split = PermutationTriple::parse("(1,2)", "(1,2)", "id", 4).unwrap();
    let e = root(run_pipeline(&split, None, &opts).unwrap_err());
    ensure(e == Error::NotTransitive, format!("transitivity: {e}"))?;
    Ok("NotEuclidean, RelationViolated, NotTransitive".into())
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Check); 7] = [
        ("1 degree-4 (3,3,3) example", Duration::from_secs(5), example_421),
        ("2 degree-6 (2,3,6) example", Duration::from_secs(10), example_422),
        ("3 degree-10 (2,4,4) example", Duration::from_secs(60), example_423),
        ("4 all triples of degree <= 8", Duration::from_secs(1800), property_sweep),
        ("5 unit oracles", Duration::from_secs(600), unit_oracles),
        ("6 degree-12 smoke test", Duration::from_secs(60), degree_twelve),
        ("7 negative inputs", Duration::from_secs(60), negatives),
    ];
    let mut failed = 0;
    for (name, budget, f) in criteria {
        let start = Instant::now();
        let out = f();
        let took = start.elapsed();
        let (status, detail) = match out {
            Ok(_) if took > budget => ("FAIL", format!("over budget {budget:?}")),
            Ok(s) => ("PASS", s),
            Err(s) => ("FAIL", s),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status} [{name}] {:.2}s {detail}", took.as_secs_f64());
    }
    println!("{} of 7 criteria passed", 7 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
