//! Integral LLL reduction (exact arithmetic on Gram–Schmidt data kept as
//! integers d_i and λ_ij), used for integer-relation detection.

use rug::Integer;

fn dot(a: &[Integer], b: &[Integer]) -> Integer {
    let mut s = Integer::new();
    for (x, y) in a.iter().zip(b) {
        s += x * y;
    }
    s
}

/// Round-to-nearest of a/b for b > 0.
fn round_div(a: &Integer, b: &Integer) -> Integer {
    let num = Integer::from(a * 2) + b;
    let den = Integer::from(b * 2);
    num.div_rem_floor(den).0
}

/// LLL-reduces the rows of `b` in place with δ = 3/4. Rows must be
/// linearly independent; returns false otherwise.
pub fn lll(b: &mut [Vec<Integer>]) -> bool {
    let n = b.len();
    if n < 2 {
        return true;
    }
    // 1-based d, λ; d[0] = 1
    let mut d = vec![Integer::new(); n + 1];
    let mut lam = vec![vec![Integer::new(); n + 1]; n + 1];
    d[0] = Integer::from(1);
    d[1] = dot(&b[0], &b[0]);
    if d[1] == 0 {
        return false;
    }
    let mut k = 2;
    let mut kmax = 1;
    while k <= n {
        if k > kmax {
            kmax = k;
            for j in 1..=k {
                let mut u = dot(&b[k - 1], &b[j - 1]);
                for i in 1..j {
                    u = (Integer::from(&d[i] * &u) - Integer::from(&lam[k][i] * &lam[j][i])) / &d[i - 1];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    if u == 0 {
                        return false;
                    }
                    d[k] = u;
                }
            }
        }
        loop {
            redi(b, &mut lam, &d, k, k - 1);
            // 4 d_k d_{k-2} < 3 d_{k-1}² − 4 λ²
            let lhs = Integer::from(&d[k] * &d[k - 2]) * 4;
            let rhs = Integer::from(d[k - 1].square_ref()) * 3 - Integer::from(lam[k][k - 1].square_ref()) * 4;
            if lhs < rhs {
                swapi(b, &mut lam, &mut d, k, kmax);
                k = (k - 1).max(2);
            } else {
                for l in (1..k - 1).rev() {
                    redi(b, &mut lam, &d, k, l);
                }
                k += 1;
                break;
            }
        }
    }
    true
}

fn redi(b: &mut [Vec<Integer>], lam: &mut [Vec<Integer>], d: &[Integer], k: usize, l: usize) {
    let twice = Integer::from(lam[k][l].abs_ref()) * 2;
    if twice <= d[l] {
        return;
    }
    let q = round_div(&lam[k][l], &d[l]);
    let (lo, hi) = b.split_at_mut(k - 1);
    let bl = &lo[l - 1];
    for (x, y) in hi[0].iter_mut().zip(bl) {
        *x -= Integer::from(&q * y);
    }
    lam[k][l] -= Integer::from(&q * &d[l]);
    for i in 1..l {
        let t = Integer::from(&q * &lam[l][i]);
        lam[k][i] -= t;
    }
}

fn swapi(b: &mut [Vec<Integer>], lam: &mut [Vec<Integer>], d: &mut [Integer], k: usize, kmax: usize) {
    b.swap(k - 1, k - 2);
    for j in 1..k - 1 {
        let t = std::mem::take(&mut lam[k][j]);
        lam[k][j] = std::mem::replace(&mut lam[k - 1][j], t);
    }
    let l = lam[k][k - 1].clone();
    let bb = (Integer::from(&d[k - 2] * &d[k]) + Integer::from(l.square_ref())) / &d[k - 1];
    for i in k + 1..=kmax {
        let t = lam[i][k].clone();
        lam[i][k] = (Integer::from(&d[k] * &lam[i][k - 1]) - Integer::from(&l * &t)) / &d[k - 1];
        lam[i][k - 1] = (Integer::from(&bb * &t) + Integer::from(&l * &lam[i][k])) / &d[k];
    }
    d[k - 1] = bb;
}
