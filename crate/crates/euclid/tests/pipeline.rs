mod common;

use common::*;
use euclid_belyi::algebra::{Base, Fe, Poly};
use euclid_belyi::belyi::{run_pipeline, BelyiMap, Options};
use euclid_belyi::triples::{enumerate_triples, Case, PermutationTriple};
use euclid_belyi::Error;

fn rational(res: &euclid_belyi::belyi::BelyiResult) -> &euclid_belyi::algebra::RatFn {
    match &res.map {
        BelyiMap::Rational(phi) => phi,
        BelyiMap::Elliptic { .. } => panic!("expected a rational map"),
    }
}

#[test]
fn degree_four_333() {
    let res = check_run(&tetra_333(), Case::C333).unwrap();
    let iso = &res.isogeny;
    let f = &res.field;
    assert!(f.is_base() && f.base == Base::Eisenstein);
    assert_eq!(iso.n, 4);
    assert_eq!(res.rotation_index, 3);
    assert_eq!(iso.kernel, Poly::from_ints(f, &[1, 0, 0, 1]));
    assert!(iso.codomain.a.is_zero());
    assert_eq!(iso.codomain.b, Fe::from_int(f, 64));
    // ψ_x = ((1/16)x⁴ − 32x)/(x³ + 64)
    let num = Poly::new(f, vec![Fe::zero(f), Fe::from_int(f, -32), Fe::zero(f), Fe::zero(f), Fe::from_rational(f, (1, 16).into())]);
    let den = Poly::from_ints(f, &[64, 0, 0, 1]);
    let want = euclid_belyi::algebra::RatFn::new(num, den).unwrap();
    assert_eq!(iso.dual_x, want);
    let phi = rational(&res);
    assert_eq!(factored(&phi.num), strs(&["(x - 8)^1", "(x + 24)^3"]));
    assert_eq!(factored(&phi.den), strs(&["(x)^3"]));
    assert_eq!(factored(&(&phi.num - &phi.den)), strs(&["(x + 8)^1", "(x - 24)^3"]));
}

#[test]
fn degree_six_236() {
    let res = check_run(&hex_236(), Case::C236).unwrap();
    let phi = rational(&res);
    let mut fibers = vec![factored(&phi.num), factored(&phi.den), factored(&(&phi.num - &phi.den))];
    fibers.sort();
    let mut want = vec![
        strs(&["(x^3 + 81*x^2 + 243*x + 2187)^2"]),
        strs(&["(x - 9)^6"]),
        strs(&["(x^2 + 27)^1", "(x + 9)^3"]),
    ];
    want.sort();
    assert_eq!(fibers, want);
}

#[test]
fn degree_ten_244_over_gaussian_field() {
    let res = check_run(&gauss_244(), Case::C244).unwrap();
    assert!(res.field.is_base());
    assert_eq!(res.field.base, Base::Gauss);
    let v = res.verification.unwrap();
    let mut got: Vec<Vec<usize>> = v.profiles.to_vec();
    got.sort();
    let mut want = vec![vec![4, 4, 2], vec![4, 4, 2], vec![2, 2, 2, 2, 1, 1]];
    want.sort();
    assert_eq!(got, want);
}

#[test]
fn unconverted_triple_is_rejected() {
    let t = PermutationTriple::parse("(1,4)(2,5)(3,6)", "(1,3,5)", "(1,4,5,2,3,6)", 6).unwrap();
    let err = run_pipeline(&t, None, &Options::default()).unwrap_err();
    assert!(matches!(err, Error::Stage { ref source, .. } if **source == Error::RelationViolated), "{err}");
}

#[test]
fn negative_inputs() {
    // orders (2,3,3): spherical
    let t = PermutationTriple::parse("(1,2)(3,4)", "(1,2,3)", "(1,4,3)", 4).unwrap();
    let err = run_pipeline(&t, None, &Options::default()).unwrap_err();
    assert!(err.to_string().contains("not Euclidean") || err.to_string().contains("relabeled"), "{err}");
    let t = PermutationTriple::parse("(1,2)", "id", "id", 2).unwrap();
    assert!(run_pipeline(&t, None, &Options::default()).unwrap_err().to_string().contains("not the identity"));
    let t = PermutationTriple::parse("(1,2)", "(1,2)", "id", 4).unwrap();
    assert!(run_pipeline(&t, None, &Options::default()).unwrap_err().to_string().contains("transitive"));
}

#[test]
fn all_small_triples() {
    for case in Case::ALL {
        for d in 1..=8 {
            for t in enumerate_triples(d, case) {
                if let Err(e) = check_run(&t, case) {
                    panic!("{case:?} d = {d} {t:?}: {e}");
                }
            }
        }
    }
}
