//! Schur functions at principal and shifted geometric points, and the
//! one- and two-leg vertex weights built from them.
//!
//! Every value lives in Q(t) with `q = t^2`.

use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coeff::rat;
use crate::partitions::Partition;
use crate::poly;
use crate::qfield::QRat;

/// `prod_{j in js} (1 - q^j)` as a polynomial in `t`.
fn cyclotomic_denominator(js: impl IntoIterator<Item = u32>) -> poly::Poly {
    let mut den = vec![BigInt::one()];
    for j in js {
        let mut f = vec![BigInt::zero(); 2 * j as usize + 1];
        f[0] = BigInt::one();
        f[2 * j as usize] = -BigInt::one();
        den = poly::mul(&den, &f);
    }
    den
}

/// `s_mu(1, q, q^2, ...)` by the hook-content product.
pub fn schur_principal(mu: &Partition) -> QRat {
    let den = cyclotomic_denominator(mu.hooks());
    QRat::from_parts(2 * mu.n_stat() as i64, vec![BigInt::one()], 0, den).expect("cyclotomic product is nonzero")
}

/// `h_k(1, q, q^2, ...)`, zero for negative `k`.
pub fn h_principal(k: i64) -> QRat {
    if k < 0 {
        return QRat::zero();
    }
    QRat::from_parts(0, vec![BigInt::one()], 0, cyclotomic_denominator(1..=k as u32))
        .expect("cyclotomic product is nonzero")
}

/// Determinant of an `n x n` matrix by Laplace expansion memoized on column subsets.
///
/// `minor[mask]` is the determinant of the first `popcount(mask)` rows restricted
/// to the columns in `mask`.
pub(crate) fn determinant(n: usize, entry: impl Fn(usize, usize) -> QRat) -> QRat {
    assert!(n < 20, "determinant size {n} too large for subset expansion");
    let m: Vec<Vec<QRat>> = (0..n).map(|i| (0..n).map(|j| entry(i, j)).collect()).collect();
    let mut minor: Vec<QRat> = vec![QRat::zero(); 1 << n];
    minor[0] = QRat::one();
    for mask in 1usize..(1 << n) {
        let row = mask.count_ones() as usize - 1;
        let mut acc = QRat::zero();
        for (j, mj) in m[row].iter().enumerate() {
            if mask & (1 << j) == 0 || mj.is_zero() {
                continue;
            }
            let rest = mask & !(1 << j);
            if minor[rest].is_zero() {
                continue;
            }
            let term = mj.mul(&minor[rest]);
            // Sign of moving column j past the higher selected columns.
            if (rest >> j).count_ones() % 2 == 0 {
                acc = acc.add(&term);
            } else {
                acc = acc.sub(&term);
            }
        }
        minor[mask] = acc;
    }
    minor[(1 << n) - 1].clone()
}

/// Jacobi-Trudi evaluation `det(h_{mu_i - i + j})` of `s_mu(1, q, q^2, ...)`.
pub fn schur_principal_jt(mu: &Partition) -> QRat {
    let n = mu.len();
    let hs: Vec<QRat> = (0..=(mu.part(0) as i64 + n as i64)).map(h_principal).collect();
    determinant(n, |i, j| {
        let k = mu.part(i) as i64 - i as i64 + j as i64;
        if k < 0 {
            QRat::zero()
        } else {
            hs[k as usize].clone()
        }
    })
}

/// Power sum `p_k` at the points `q^{mu_i - i}`, `i >= 1`, summed in closed form.
pub fn p_shifted(mu: &Partition, k: u32) -> QRat {
    assert!(k >= 1, "p_shifted needs k >= 1");
    let k = k as i64;
    let l = mu.len() as i64;
    // q^{-kl} / (q^k - 1)
    let tail = QRat::q_pow(-k * l)
        .div(&QRat::one_minus_q_pow(k as u32).neg())
        .expect("1 - q^k is nonzero");
    mu.parts().iter().enumerate().fold(tail, |acc, (i, &p)| {
        acc.add(&QRat::q_pow(k * (p as i64 - i as i64 - 1)))
    })
}

/// `h_0 .. h_kmax` at the shifted points, by Newton's identities.
fn h_shifted_upto(mu: &Partition, kmax: usize) -> Vec<QRat> {
    let p: Vec<QRat> = (1..=kmax as u32).map(|j| p_shifted(mu, j)).collect();
    let mut h = vec![QRat::one()];
    for k in 1..=kmax {
        let mut acc = QRat::zero();
        for j in 1..=k {
            acc = acc.add(&p[j - 1].mul(&h[k - j]));
        }
        h.push(acc.scale(&rat(1, k as i64)));
    }
    h
}

/// `h_k` at the points `q^{mu_i - i}`.
pub fn h_shifted(mu: &Partition, k: i64) -> QRat {
    if k < 0 {
        return QRat::zero();
    }
    h_shifted_upto(mu, k as usize).pop().expect("h_0 is always present")
}

/// `s_nu(q^{mu_1 - 1}, q^{mu_2 - 2}, ...)` by Jacobi-Trudi.
pub fn schur_shifted(nu: &Partition, mu: &Partition) -> QRat {
    let n = nu.len();
    if n == 0 {
        return QRat::one();
    }
    let h = h_shifted_upto(mu, nu.part(0) as usize + n - 1);
    determinant(n, |i, j| {
        let k = nu.part(i) as i64 - i as i64 + j as i64;
        if k < 0 {
            QRat::zero()
        } else {
            h[k as usize].clone()
        }
    })
}

/// One-leg weight `(-1)^{|mu|} q^{(kappa + |mu|)/2} s_mu(1, q, ...)`.
pub fn w_one(mu: &Partition) -> QRat {
    let size = mu.size() as i64;
    let w = schur_principal(mu).mul(&QRat::t_pow(mu.kappa() + size));
    if size % 2 == 1 {
        w.neg()
    } else {
        w
    }
}

type WKey = (Partition, Partition);

static W_TWO: LazyLock<RwLock<HashMap<WKey, QRat>>> = LazyLock::new(Default::default);

/// Two-leg weight `q^{|nu|/2} W_mu s_nu(q^{mu_i - i})`, memoized per ordered pair.
pub fn w_two(mu: &Partition, nu: &Partition) -> QRat {
    let key = (mu.clone(), nu.clone());
    if let Some(v) = W_TWO.read().expect("w_two memo poisoned").get(&key) {
        return v.clone();
    }
    let v = QRat::t_pow(nu.size() as i64)
        .mul(&w_one(mu))
        .mul(&schur_shifted(nu, mu));
    W_TWO.write().expect("w_two memo poisoned").insert(key, v.clone());
    v
}

/// `q^{-kappa/4} W_mu`. Under `q -> 1/q` it picks up the sign `(-1)^{|mu|}`.
pub fn w_tilde(mu: &Partition) -> QRat {
    w_one(mu).mul(&QRat::t_pow(-mu.kappa() / 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{enumerate, enumerate_up_to};

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn q(k: i64) -> QRat {
        QRat::q_pow(k)
    }

    fn omq(k: u32) -> QRat {
        QRat::one_minus_q_pow(k)
    }

    #[test]
    fn principal_examples() {
        assert_eq!(schur_principal(&p(&[])), QRat::one());
        assert_eq!(schur_principal(&p(&[1])), omq(1).inv().unwrap());
        let expect = q(1).div(&omq(1).pow(2).unwrap().mul(&omq(3))).unwrap();
        assert_eq!(schur_principal(&p(&[2, 1])), expect);
        assert_eq!(h_principal(0), QRat::one());
        assert_eq!(h_principal(-3), QRat::zero());
        assert_eq!(h_principal(2), omq(1).mul(&omq(2)).inv().unwrap());
    }

    #[test]
    fn jacobi_trudi_matches_hook_content() {
        assert_eq!(schur_principal_jt(&p(&[])), QRat::one());
        for mu in enumerate_up_to(8) {
            assert_eq!(schur_principal_jt(&mu), schur_principal(&mu), "mu = {mu}");
        }
    }

    #[test]
    fn shifted_power_sums() {
        let e = Partition::empty();
        let qm1 = q(1).sub(&QRat::one());
        assert_eq!(p_shifted(&e, 1), qm1.inv().unwrap());
        assert_eq!(p_shifted(&p(&[1]), 1), QRat::one().add(&q(-1).div(&qm1).unwrap()));
        assert_eq!(p_shifted(&e, 2), q(2).sub(&QRat::one()).inv().unwrap());
    }

    #[test]
    fn shifted_complete_sums() {
        let e = Partition::empty();
        assert_eq!(h_shifted(&e, 0), QRat::one());
        assert_eq!(h_shifted(&e, -1), QRat::zero());
        assert_eq!(h_shifted(&e, 1), p_shifted(&e, 1));
        let (p1, p2) = (p_shifted(&e, 1), p_shifted(&e, 2));
        assert_eq!(h_shifted(&e, 2).scale(&rat(2, 1)), p1.mul(&h_shifted(&e, 1)).add(&p2));
    }

    #[test]
    fn shifted_schur_examples() {
        let e = Partition::empty();
        for mu in enumerate_up_to(3) {
            assert_eq!(schur_shifted(&e, &mu), QRat::one());
        }
        assert_eq!(schur_shifted(&p(&[1]), &e), h_shifted(&e, 1));
        assert_eq!(schur_shifted(&p(&[1]), &p(&[1])), p_shifted(&p(&[1]), 1));
    }

    /// Sum of `z^{entries}` over semistandard tableaux of shape `nu` with entries in `1..=n`.
    fn ssyt_weights(nu: &Partition, n: u32, max_deg: usize) -> Vec<i64> {
        let cells: Vec<(usize, usize)> = nu
            .parts()
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| (0..r as usize).map(move |j| (i, j)))
            .collect();
        let mut out = vec![0i64; max_deg + 1];
        let mut grid = vec![vec![0u32; nu.part(0) as usize]; nu.len()];
        fn fill(
            idx: usize,
            deg: usize,
            cells: &[(usize, usize)],
            grid: &mut Vec<Vec<u32>>,
            n: u32,
            out: &mut Vec<i64>,
        ) {
            if deg >= out.len() {
                return;
            }
            if idx == cells.len() {
                out[deg] += 1;
                return;
            }
            let (i, j) = cells[idx];
            let lo_row = if j > 0 { grid[i][j - 1] } else { 1 };
            let lo_col = if i > 0 { grid[i - 1][j] + 1 } else { 1 };
            for v in lo_row.max(lo_col)..=n {
                grid[i][j] = v;
                fill(idx + 1, deg + v as usize, cells, grid, n, out);
            }
        }
        fill(0, 0, &cells, &mut grid, n, &mut out);
        out
    }

    #[test]
    fn shifted_schur_against_tableaux() {
        // x_i = q^{-i}; variables beyond 30 only reach degrees above 30.
        let order = 30;
        for nu in enumerate_up_to(3) {
            let counts = ssyt_weights(&nu, order as u32, order);
            let f = schur_shifted(&nu, &Partition::empty()).invert_t();
            let exp = f.expand(2 * order as i64);
            for (d, &c) in counts.iter().enumerate() {
                let got = exp.get(&(2 * d as i64)).cloned().unwrap_or_default();
                assert_eq!(got, rat(c, 1), "nu = {nu}, degree {d}");
            }
            assert!(exp.keys().all(|k| k % 2 == 0));
        }
    }

    #[test]
    fn one_leg_examples() {
        assert_eq!(w_one(&p(&[])), QRat::one());
        let t = QRat::t_pow(1);
        assert_eq!(w_one(&p(&[1])), t.div(&omq(1)).unwrap().neg());
        assert_eq!(w_one(&p(&[2])), QRat::t_pow(4).div(&omq(1).mul(&omq(2))).unwrap());
    }

    #[test]
    fn two_leg_symmetry() {
        let e = Partition::empty();
        assert_eq!(w_two(&e, &e), QRat::one());
        for mu in enumerate_up_to(4) {
            assert_eq!(w_two(&mu, &e), w_one(&mu));
        }
        for n in 0..=8u32 {
            for a in 0..=n {
                for mu in enumerate(a) {
                    for nu in enumerate(n - a) {
                        assert_eq!(w_two(&mu, &nu), w_two(&nu, &mu), "mu = {mu}, nu = {nu}");
                    }
                }
            }
        }
    }

    #[test]
    fn w_tilde_inversion_symmetry() {
        assert_eq!(w_tilde(&p(&[])), QRat::one());
        assert_eq!(w_tilde(&p(&[1])), w_one(&p(&[1])));
        assert_eq!(w_tilde(&p(&[2])).invert_t(), w_tilde(&p(&[2])));
        for mu in enumerate_up_to(6) {
            let w = w_tilde(&mu);
            let expect = if mu.size() % 2 == 0 { w.clone() } else { w.neg() };
            assert_eq!(w.invert_t(), expect, "mu = {mu}");
        }
    }
}
