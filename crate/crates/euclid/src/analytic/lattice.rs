//! Lattices in ℂ, their Eisenstein invariants and the Weierstrass ℘
//! function, evaluated through Jacobi theta series with q = e^{iπτ}.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float};

use crate::error::{Error, Result};

/// Bits added to every internal computation.
const GUARD: u32 = 48;

fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

fn cplx(prec: u32, v: impl Into<f64>) -> Complex {
    Complex::with_val(prec, v.into())
}

fn abs_log2(z: &Complex) -> f64 {
    let a = Float::with_val(64, z.abs_ref());
    if a.is_zero() {
        f64::NEG_INFINITY
    } else {
        a.log2().to_f64()
    }
}

/// A lattice ℤw₁ + ℤw₂ with a reduced oriented basis and cached theta
/// constants.
#[derive(Clone, Debug)]
pub struct Lattice {
    pub w1: Complex,
    pub w2: Complex,
    pub prec: u32,
    tau: Complex,
    q: Complex,
    q4: Complex,
    th2: Complex,
    th3: Complex,
    th4: Complex,
}

impl Lattice {
    /// Builds from any basis; reduces it so that τ = w₂/w₁ lies in the
    /// standard fundamental domain.
    pub fn new(w1: &Complex, w2: &Complex, prec: u32) -> Result<Lattice> {
        let wp = prec + GUARD;
        let mut a = Complex::with_val(wp, w1);
        let mut b = Complex::with_val(wp, w2);
        let t = Complex::with_val(wp, &b / &a);
        if t.imag().is_zero() {
            return Err(Error::InternalInconsistency("degenerate lattice".into()));
        }
        if t.imag().is_sign_negative() {
            b = -b;
        }
        // Gauss reduction
        for _ in 0..200 {
            let na = Float::with_val(wp, a.norm_ref());
            let nb = Float::with_val(wp, b.norm_ref());
            if nb < na {
                std::mem::swap(&mut a, &mut b);
                b = -b;
                continue;
            }
            let t = Complex::with_val(wp, &b / &a);
            let m = Float::with_val(wp, t.real().round_ref());
            if m.is_zero() {
                break;
            }
            b -= Complex::with_val(wp, &a * &m);
        }
        let tau = Complex::with_val(wp, &b / &a);
        if tau.imag().is_sign_negative() {
            b = -b;
        }
        let tau = Complex::with_val(wp, &b / &a);
        let ipi = Complex::with_val(wp, (0, pi(wp)));
        let q = Complex::with_val(wp, &ipi * &tau).exp();
        let q4 = Complex::with_val(wp, Complex::with_val(wp, &ipi * &tau) / 4u32).exp();
        let mut lat = Lattice {
            w1: a,
            w2: b,
            prec,
            tau,
            q,
            q4,
            th2: cplx(wp, 0),
            th3: cplx(wp, 0),
            th4: cplx(wp, 0),
        };
        let zero = cplx(wp, 0);
        let th = lat.thetas(&zero)?;
        lat.th2 = th[1].clone();
        lat.th3 = th[2].clone();
        lat.th4 = th[3].clone();
        Ok(lat)
    }

    pub fn tau(&self) -> &Complex {
        &self.tau
    }

    fn wp(&self) -> u32 {
        self.prec + GUARD
    }

    /// θ₁..θ₄ at v.
    fn thetas(&self, v: &Complex) -> Result<[Complex; 4]> {
        let wp = self.wp();
        let iv = Complex::with_val(wp, v * Complex::with_val(wp, (0, 1)));
        let e = Complex::with_val(wp, iv.exp_ref());
        let einv = Complex::with_val(wp, 1 / &e);
        let e2 = Complex::with_val(wp, &e * &e);
        let e2inv = Complex::with_val(wp, &einv * &einv);
        // odd terms: e^{±i(2n+1)v}, weights q^{n²+n}
        let mut ep = e.clone();
        let mut em = einv.clone();
        // even terms: e^{±i2nv}, weights q^{n²}
        let mut fp = e2.clone();
        let mut fm = e2inv.clone();
        let mut s1 = cplx(wp, 0); // Σ (−1)^n q^{n²+n} sin((2n+1)v)
        let mut s2 = cplx(wp, 0); // Σ q^{n²+n} cos((2n+1)v)
        let mut s3 = cplx(wp, 0); // Σ_{n≥1} q^{n²} cos(2nv)
        let mut s4 = cplx(wp, 0); // Σ_{n≥1} (−1)^n q^{n²} cos(2nv)
        let mut qodd = cplx(wp, 1); // q^{n²+n}
        let mut qeven = Complex::with_val(wp, &self.q); // q^{n²}
        let q2 = Complex::with_val(wp, &self.q * &self.q);
        let mut qstep_odd = q2.clone(); // q^{2n+2}
        let mut qstep_even = Complex::with_val(wp, &self.q * &q2); // q^{2n+1}
        let limit = -(wp as f64) - 16.0;
        let mut n = 0u32;
        loop {
            let sin = Complex::with_val(wp, &ep - &em) / Complex::with_val(wp, (0, 2));
            let cos = Complex::with_val(wp, &ep + &em) / 2u32;
            let t1 = Complex::with_val(wp, &qodd * &sin);
            let t2 = Complex::with_val(wp, &qodd * &cos);
            if n.is_multiple_of(2) {
                s1 += &t1;
            } else {
                s1 -= &t1;
            }
            s2 += &t2;
            let cos2 = Complex::with_val(wp, &fp + &fm) / 2u32;
            let t3 = Complex::with_val(wp, &qeven * &cos2);
            s3 += &t3;
            if n.is_multiple_of(2) {
                s4 -= &t3;
            } else {
                s4 += &t3;
            }
            let mag = abs_log2(&t1).max(abs_log2(&t2)).max(abs_log2(&t3));
            if mag < limit && n > 1 {
                break;
            }
            n += 1;
            if n > 100_000 {
                return Err(Error::PrecisionExhausted);
            }
            qodd *= &qstep_odd;
            qstep_odd *= &q2;
            qeven *= &qstep_even;
            qstep_even *= &q2;
            ep *= &e2;
            em *= &e2inv;
            fp *= &e2;
            fm *= &e2inv;
        }
        let two_q4 = Complex::with_val(wp, &self.q4 * 2u32);
        let th1 = Complex::with_val(wp, &two_q4 * &s1);
        let th2 = Complex::with_val(wp, &two_q4 * &s2);
        let th3 = Complex::with_val(wp, s3 * 2u32) + 1u32;
        let th4 = Complex::with_val(wp, s4 * 2u32) + 1u32;
        Ok([th1, th2, th3, th4])
    }

    /// z modulo the lattice, in the centered fundamental parallelogram.
    pub fn reduce(&self, z: &Complex) -> Complex {
        let wp = self.wp();
        let u = Complex::with_val(wp, z / &self.w1);
        let b = Float::with_val(wp, u.imag() / self.tau.imag());
        let a = Float::with_val(wp, u.real() - Float::with_val(wp, &b * self.tau.real()));
        let ra = Float::with_val(wp, a.round_ref());
        let rb = Float::with_val(wp, b.round_ref());
        let shift = Complex::with_val(wp, &self.w1 * &ra) + Complex::with_val(wp, &self.w2 * &rb);
        Complex::with_val(wp, z - shift)
    }

    /// (℘(z), ℘′(z)).
    pub fn wp_pair(&self, z: &Complex) -> Result<(Complex, Complex)> {
        let wp = self.wp();
        let zr = self.reduce(z);
        let c = Complex::with_val(wp, pi(wp) / &self.w1);
        let v = Complex::with_val(wp, &c * &zr);
        if abs_log2(&v) < -(self.prec as f64) * 0.9 {
            return Err(Error::LatticePoint);
        }
        let [t1, t2, t3, t4] = self.thetas(&v)?;
        if abs_log2(&t1) < -(self.prec as f64) * 0.9 {
            return Err(Error::LatticePoint);
        }
        let th22 = Complex::with_val(wp, self.th2.square_ref());
        let th32 = Complex::with_val(wp, self.th3.square_ref());
        let th42 = Complex::with_val(wp, self.th4.square_ref());
        let c2 = Complex::with_val(wp, c.square_ref());
        let ratio = Complex::with_val(wp, &t4 / &t1);
        let mut p = Complex::with_val(wp, &th22 * &th32) * Complex::with_val(wp, ratio.square_ref());
        let cst = Complex::with_val(wp, th22.square_ref()) + Complex::with_val(wp, th32.square_ref());
        p -= cst / 3u32;
        p *= &c2;
        let t1c = Complex::with_val(wp, t1.square_ref()) * &t1;
        let mut d = Complex::with_val(wp, &th22 * &th32) * &th42;
        d *= Complex::with_val(wp, &t2 * &t3) * &t4;
        d /= t1c;
        d *= Complex::with_val(wp, &c2 * &c);
        d *= -2i32;
        Ok((
            Complex::with_val(self.prec, p),
            Complex::with_val(self.prec, d),
        ))
    }

    /// The half-period values e₁, e₂, e₃.
    pub fn e_values(&self) -> [Complex; 3] {
        let wp = self.wp();
        let w1sq = Complex::with_val(wp, self.w1.square_ref()) * 3u32;
        let k = Complex::with_val(wp, pi(wp).square() / w1sq);
        let t2 = Complex::with_val(wp, self.th2.square_ref()).square();
        let t3 = Complex::with_val(wp, self.th3.square_ref()).square();
        let t4 = Complex::with_val(wp, self.th4.square_ref()).square();
        let e1 = Complex::with_val(wp, &t3 + &t4) * &k;
        let e2 = Complex::with_val(wp, &t2 - &t4) * &k;
        let e3 = -(Complex::with_val(wp, &t2 + &t3) * &k);
        [e1, e2, e3]
    }

    /// (g₂, g₃) = (2Σe², 4e₁e₂e₃).
    pub fn eisenstein(&self) -> (Complex, Complex) {
        let wp = self.wp();
        let [e1, e2, e3] = self.e_values();
        let s = Complex::with_val(wp, e1.square_ref())
            + Complex::with_val(wp, e2.square_ref())
            + Complex::with_val(wp, e3.square_ref());
        let g2 = s * 2u32;
        let g3 = Complex::with_val(wp, &e1 * &e2) * &e3 * 4u32;
        (Complex::with_val(self.prec, g2), Complex::with_val(self.prec, g3))
    }

    /// The lattice μ·Λ.
    pub fn scaled(&self, mu: &Complex) -> Result<Lattice> {
        let wp = self.wp();
        Lattice::new(
            &Complex::with_val(wp, &self.w1 * mu),
            &Complex::with_val(wp, &self.w2 * mu),
            self.prec,
        )
    }
}

/// Principal k-th root.
pub fn principal_root(z: &Complex, k: u32) -> Complex {
    let prec = z.prec().0;
    let l = Complex::with_val(prec, z.ln_ref()) / k;
    l.exp()
}

/// Which model the scaled lattice should realize.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    /// g₂ = 4, g₃ = 0: y² = x³ − x.
    Square,
    /// g₂ = 0, g₃ = −4: y² = x³ + 1.
    Hex,
}

/// A lattice Λ together with μ such that μΛ realizes the chosen model.
#[derive(Clone, Debug)]
pub struct ScaledLattice {
    pub base: Lattice,
    pub mu: Complex,
    pub scaled: Lattice,
    pub g2: Complex,
    pub g3: Complex,
}

pub fn scale_to_model(lat: &Lattice, model: Model) -> Result<ScaledLattice> {
    let prec = lat.prec;
    let (g2, g3) = lat.eisenstein();
    let mu = match model {
        Model::Square => principal_root(&Complex::with_val(prec, &g2 / 4u32), 4),
        Model::Hex => principal_root(&Complex::with_val(prec, -(g3 / 4u32)), 6),
    };
    let scaled = lat.scaled(&mu)?;
    let (g2, g3) = scaled.eisenstein();
    Ok(ScaledLattice { base: lat.clone(), mu, scaled, g2, g3 })
}

impl ScaledLattice {
    /// (℘(μz), ℘′(μz)/2) on the scaled lattice.
    pub fn wp(&self, z: &Complex) -> Result<(Complex, Complex)> {
        let mz = Complex::with_val(self.base.prec + GUARD, z * &self.mu);
        let (p, d) = self.scaled.wp_pair(&mz)?;
        Ok((p, d / 2u32))
    }
}

/// |a − b| as an f64 log2 (−∞ when equal).
pub fn dist_log2(a: &Complex, b: &Complex) -> f64 {
    let d = Complex::with_val(a.prec().0.max(b.prec().0), a - b);
    abs_log2(&d)
}

/// Convenience: 2^k as a Float.
pub fn pow2(prec: u32, k: i32) -> Float {
    Float::with_val(prec, 2).pow(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(prec: u32, re: f64, im: f64) -> Complex {
        Complex::with_val(prec, (re, im))
    }

    fn residual_bits(lat: &Lattice, z: &Complex) -> f64 {
        let (g2, g3) = lat.eisenstein();
        let (p, d) = lat.wp_pair(z).unwrap();
        let lhs = Complex::with_val(256, d.square_ref());
        let rhs = Complex::with_val(256, p.square_ref()) * &p * 4u32 - Complex::with_val(256, &g2 * &p) - &g3;
        dist_log2(&lhs, &rhs) - abs_log2(&lhs).max(0.0)
    }

    #[test]
    fn differential_equation() {
        let lat = Lattice::new(&c(128, 1.0, 0.0), &c(128, 0.3, 1.1), 128).unwrap();
        for z in [c(128, 0.1, 0.2), c(128, -0.37, 0.61), c(128, 1.7, -2.3)] {
            assert!(residual_bits(&lat, &z) < -64.0);
        }
    }

    #[test]
    fn even_and_periodic() {
        let lat = Lattice::new(&c(160, 1.2, 0.1), &c(160, -0.2, 0.9), 160).unwrap();
        let z = c(160, 0.31, 0.17);
        let (p, d) = lat.wp_pair(&z).unwrap();
        let (pm, dm) = lat.wp_pair(&Complex::with_val(160, -&z)).unwrap();
        assert!(dist_log2(&p, &pm) < -140.0);
        assert!(dist_log2(&d, &Complex::with_val(160, -&dm)) < -130.0);
        let shifted = Complex::with_val(160, &z + &lat.w1) + &lat.w2;
        let (ps, _) = lat.wp_pair(&shifted).unwrap();
        assert!(dist_log2(&p, &ps) < -130.0);
        assert_eq!(lat.wp_pair(&lat.w1.clone()).unwrap_err(), Error::LatticePoint);
    }

    #[test]
    fn half_periods_are_roots() {
        let lat = Lattice::new(&c(128, 1.0, 0.0), &c(128, 0.2, 1.3), 128).unwrap();
        let es = lat.e_values();
        let halves = [
            Complex::with_val(128, &lat.w1 / 2u32),
            Complex::with_val(128, &lat.w2 / 2u32),
            Complex::with_val(128, &lat.w1 + &lat.w2) / 2u32,
        ];
        let sum = Complex::with_val(128, &es[0] + &es[1]) + &es[2];
        assert!(abs_log2(&sum) < -110.0);
        for h in &halves {
            let (p, d) = lat.wp_pair(h).unwrap();
            assert!(abs_log2(&d) < -100.0);
            assert!(es.iter().any(|e| dist_log2(e, &p) < -100.0));
        }
    }

    #[test]
    fn homogeneity_and_models() {
        let lat = Lattice::new(&c(128, 1.0, 0.0), &c(128, 0.4, 0.8), 128).unwrap();
        let mu = c(128, 0.7, -0.3);
        let (g2, g3) = lat.eisenstein();
        let (h2, h3) = lat.scaled(&mu).unwrap().eisenstein();
        let m4 = Complex::with_val(128, mu.square_ref()).square();
        let m6 = Complex::with_val(128, &m4 * &mu) * &mu;
        assert!(dist_log2(&Complex::with_val(128, &h2 * &m4), &g2) < -100.0);
        assert!(dist_log2(&Complex::with_val(128, &h3 * &m6), &g3) < -100.0);

        let sq = Lattice::new(&c(128, 1.0, 0.0), &c(128, 0.0, 1.0), 128).unwrap();
        let s = scale_to_model(&sq, Model::Square).unwrap();
        assert!(dist_log2(&s.g2, &c(128, 4.0, 0.0)) < -100.0);
        assert!(abs_log2(&s.g3) < -100.0);
        let half = Float::with_val(128, 3).sqrt() / 2u32;
        let hex = Lattice::new(&c(128, 1.0, 0.0), &Complex::with_val(128, (0.5, half)), 128).unwrap();
        let h = scale_to_model(&hex, Model::Hex).unwrap();
        assert!(abs_log2(&h.g2) < -100.0);
        assert!(dist_log2(&h.g3, &c(128, -4.0, 0.0)) < -100.0);
    }

    #[test]
    fn rotation_equivariance() {
        // on the square lattice ℘(iz) = −℘(z)
        let sq = Lattice::new(&c(128, 1.0, 0.0), &c(128, 0.0, 1.0), 128).unwrap();
        let z = c(128, 0.23, 0.11);
        let iz = Complex::with_val(128, &z * c(128, 0.0, 1.0));
        let (p, _) = sq.wp_pair(&z).unwrap();
        let (q, _) = sq.wp_pair(&iz).unwrap();
        assert!(dist_log2(&p, &Complex::with_val(128, -&q)) < -100.0);
    }
}
