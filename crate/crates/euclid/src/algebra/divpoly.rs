//! Division polynomials by the ψ-recursion.
//!
//! We store P_n with ψ_n = P_n(x) for odd n and ψ_n = y·P_n(x) for even n,
//! reducing y² to f(x) = x³ + Ax + B throughout.

use rug::Rational;

use super::curve::Curve;
use super::field::Fe;
use super::poly::{Poly, RatFn};

/// P_0, …, P_n.
pub fn psi_table(e: &Curve, n: usize) -> Vec<Poly> {
    let fld = e.field();
    let (a, b) = (&e.a, &e.b);
    let c = |k: i64| Fe::from_int(fld, k);
    let f = e.rhs();
    let f2 = &f * &f;
    let mut p: Vec<Poly> = Vec::with_capacity(n.max(4) + 1);
    p.push(Poly::zero(fld));
    p.push(Poly::one(fld));
    p.push(Poly::constant(c(2)));
    // 3x⁴ + 6Ax² + 12Bx − A²
    p.push(Poly::new(
        fld,
        vec![-&a.pow(2), b.scale(&Rational::from(12)), a.scale(&Rational::from(6)), c(0), c(3)],
    ));
    // 4(x⁶ + 5Ax⁴ + 20Bx³ − 5A²x² − 4ABx − 8B² − A³)
    let inner = Poly::new(
        fld,
        vec![
            &(-&b.pow(2).scale(&Rational::from(8))) - &a.pow(3),
            -&(a * b).scale(&Rational::from(4)),
            -&a.pow(2).scale(&Rational::from(5)),
            b.scale(&Rational::from(20)),
            a.scale(&Rational::from(5)),
            c(0),
            c(1),
        ],
    );
    p.push(inner.scale(&c(4)));
    let half = Fe::from_rational(fld, Rational::from((1, 2)));
    for k in 5..=n {
        let m = k / 2;
        let next = if k % 2 == 1 {
            let t1 = &p[m + 2] * &p[m].pow(3);
            let t2 = &p[m - 1] * &p[m + 1].pow(3);
            if m % 2 == 0 {
                &(&f2 * &t1) - &t2
            } else {
                &t1 - &(&f2 * &t2)
            }
        } else {
            let t = &(&p[m + 2] * &p[m - 1].pow(2)) - &(&p[m - 2] * &p[m + 1].pow(2));
            (&p[m] * &t).scale(&half)
        };
        p.push(next);
    }
    p.truncate(n + 1);
    p
}

/// Monic polynomial whose roots are the x-coordinates of the nonzero
/// N-torsion points.
pub fn division_polynomial(e: &Curve, n: usize) -> Poly {
    let fld = e.field();
    if n <= 1 {
        return Poly::one(fld);
    }
    let p = psi_table(e, n);
    if n % 2 == 1 {
        p[n].monic()
    } else {
        (&e.rhs() * &p[n]).monic()
    }
}

/// Monic polynomial whose roots are the x-coordinates of points of exact
/// order N.
pub fn primitive_division_polynomial(e: &Curve, n: usize) -> Poly {
    let mut g = division_polynomial(e, n);
    for d in 2..n {
        if n.is_multiple_of(d) {
            let fd = division_polynomial(e, d);
            let h = g.gcd(&fd);
            if h.degree() > 0 {
                g = g.div_exact(&h).expect("gcd divides");
            }
        }
    }
    g
}

/// x-coordinate of multiplication by N as a rational function.
pub fn mult_x(e: &Curve, n: usize) -> RatFn {
    let fld = e.field();
    if n == 1 {
        return RatFn::x(fld);
    }
    let p = psi_table(e, n + 1);
    let f = e.rhs();
    let (sq, prod) = if n % 2 == 1 {
        (p[n].pow(2), &(&f * &p[n + 1]) * &p[n - 1])
    } else {
        (&f * &p[n].pow(2), &p[n + 1] * &p[n - 1])
    };
    let num = &(&Poly::x(fld) * &sq) - &prod;
    RatFn::new(num, sq).expect("nonzero ψ_N")
}

/// Expected degree of the N-division polynomial.
pub fn expected_degree(n: usize) -> usize {
    match n {
        0 | 1 => 0,
        _ if n % 2 == 1 => (n * n - 1) / 2,
        _ => (n * n - 4) / 2 + 3,
    }
}
