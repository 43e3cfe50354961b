//! Two-leg topological vertex sums for local toric surfaces.
//!
//! `S_{mu nu}(q, Q) = sum_lambda W_{mu lambda} W_{nu lambda} Q^{|lambda|}` is
//! computed three independent ways (exponential closed form, direct lambda
//! sum, product over staircase factors). The Hirzebruch partition function
//! is assembled from squares of `S` over pairs `(mu2, mu4)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cache::DiskCache;
use crate::coeff::{int, rat};
use crate::error::{Error, Result};
use crate::partitions::{enumerate, enumerate_up_to, Partition};
use crate::qfield::QRat;
use crate::series::{QSeries, Series};
use crate::symmfun::{p_shifted, w_one, w_two};

/// A toric surface given by its boundary divisors in polygon order.
///
/// Divisor classes are integer coordinates `[x_b, x_c]` in a two-element
/// basis of `H_2`; for Hirzebruch surfaces the basis is (fiber `b`, section `c`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToricSurface {
    pub divisor_classes: Vec<[i64; 2]>,
    pub self_intersections: Vec<i64>,
}

impl ToricSurface {
    pub fn new(divisor_classes: Vec<[i64; 2]>, self_intersections: Vec<i64>) -> Result<Self> {
        if divisor_classes.len() < 3 || divisor_classes.len() != self_intersections.len() {
            return Err(Error::InvalidInput(
                "a toric surface needs N >= 3 divisors with one self-intersection each".into(),
            ));
        }
        if divisor_classes
            .iter()
            .any(|d| d[0] < 0 || d[1] < 0 || (d[0] == 0 && d[1] == 0))
        {
            return Err(Error::InvalidInput(
                "divisor classes must be nonzero and effective".into(),
            ));
        }
        Ok(ToricSurface {
            divisor_classes,
            self_intersections,
        })
    }

    /// `F_r`: `D_1 = D_3 = b`, `D_2 = c + r b`, `D_4 = c`, with `c^2 = -r`.
    pub fn hirzebruch(r: u32) -> Self {
        let r = r as i64;
        ToricSurface {
            divisor_classes: vec![[1, 0], [r, 1], [1, 0], [0, 1]],
            self_intersections: vec![0, r, 0, -r],
        }
    }

    /// `P^2` with every boundary line in the hyperplane class, stored in the first coordinate.
    pub fn projective_plane() -> Self {
        ToricSurface {
            divisor_classes: vec![[1, 0]; 3],
            self_intersections: vec![1; 3],
        }
    }

    pub fn len(&self) -> usize {
        self.divisor_classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.divisor_classes.is_empty()
    }
}

/// Numerator coefficients of `p_mu(q) p_nu(q) (1-q)^2 = sum_{|i| <= s} a_i q^i`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AICoeffs {
    pub s: u32,
    pub a: BTreeMap<i64, BigRational>,
}

impl AICoeffs {
    pub fn is_integral(&self) -> bool {
        self.a.values().all(|v| v.is_integer())
    }
}

pub fn ai_coeffs(mu: &Partition, nu: &Partition) -> Result<AICoeffs> {
    let f = p_shifted(mu, 1)
        .mul(&p_shifted(nu, 1))
        .mul(&QRat::one_minus_q_pow(1).pow(2)?);
    if !f.is_laurent_polynomial() || !f.has_even_t_powers() {
        return Err(Error::Internal(format!(
            "p_{mu} p_{nu} (1-q)^2 is not a Laurent polynomial in q"
        )));
    }
    let mut a = BTreeMap::new();
    for (k, c) in f.numerator().iter().enumerate() {
        if !c.is_zero() {
            let deg = (f.offset() + k as i64) / 2;
            a.insert(deg, BigRational::from_integer(c.clone()));
        }
    }
    let sum: BigRational = a.values().cloned().sum();
    let moment: BigRational = a.iter().map(|(i, v)| v * int(*i)).sum();
    if !sum.is_one() || !moment.is_zero() {
        return Err(Error::Internal(format!("a_i constraints fail for ({mu}, {nu})")));
    }
    let s = a.keys().map(|i| i.unsigned_abs()).max().unwrap_or(0) as u32;
    Ok(AICoeffs { s, a })
}

/// `sum_k c_k(q) Q^k / k` with `c_k = (p_mu p_nu)(q^k) q^k`, optionally minus the `(0, 0)` term.
fn exponent_series(mu: &Partition, nu: &Partition, n: i64, relative: bool) -> QSeries {
    let terms: Vec<(i64, QRat)> = (1..=n)
        .into_par_iter()
        .map(|k| {
            let ku = k as u32;
            let mut c = p_shifted(mu, ku).mul(&p_shifted(nu, ku));
            if relative {
                let e = Partition::empty();
                c = c.sub(&p_shifted(&e, ku).mul(&p_shifted(&e, ku)));
            }
            (k, c.mul(&QRat::q_pow(k)).scale(&rat(1, k)))
        })
        .collect();
    Series::from_coeffs(terms, n)
}

/// `S_{mu nu}` from `W_mu W_nu exp(sum_k p_mu(q^k) p_nu(q^k) (qQ)^k / k)`.
pub fn s_closed(mu: &Partition, nu: &Partition, n: i64) -> QSeries {
    let e = exponent_series(mu, nu, n, false)
        .exp()
        .expect("exponent has no constant term");
    e.mul_coeff(&w_one(mu).mul(&w_one(nu)))
}

/// `S_{mu nu}` as the literal sum over all `lambda` with `|lambda| <= n`.
pub fn s_direct(mu: &Partition, nu: &Partition, n: i64) -> QSeries {
    let lambdas = enumerate_up_to(n.max(0) as u32);
    let terms: Vec<(i64, QRat)> = lambdas
        .par_iter()
        .map(|l| (l.size() as i64, w_two(mu, l).mul(&w_two(nu, l))))
        .collect();
    Series::from_coeffs(terms, n)
}

/// `F(Q) = prod_{j >= 1} (1 - q^j Q)^{-j}` exactly, to order `n`.
///
/// Uses `F(qQ) = E(Q) F(Q)` with `E(Q) = prod_{j >= 1} (1 - q^j Q)`, whose
/// coefficients satisfy `e_k = -q^k e_{k-1} / (1 - q^k)`; comparing `Q^n`
/// gives `(q^n - 1) f_n = sum_{k >= 1} e_k f_{n-k}`.
pub fn staircase(n: i64) -> QSeries {
    let mut e = vec![QRat::one()];
    let mut f = vec![QRat::one()];
    for k in 1..=n.max(0) {
        let ek = QRat::q_pow(k)
            .mul(&e[k as usize - 1])
            .div(&QRat::one_minus_q_pow(k as u32))
            .expect("nonzero");
        e.push(ek.neg());
        let mut acc = QRat::zero();
        for i in 1..=k as usize {
            acc = acc.add(&e[i].mul(&f[k as usize - i]));
        }
        f.push(acc.div(&QRat::one_minus_q_pow(k as u32).neg()).expect("nonzero"));
    }
    Series::from_coeffs(f.into_iter().enumerate().map(|(i, c)| (i as i64, c)), n)
}

/// `s^a` for a rational exponent via `exp(a log s)`; `s` must be `1 + O(Q)`.
pub fn series_pow_rational(s: &QSeries, a: &BigRational) -> Result<QSeries> {
    if a.is_integer() {
        let k = a
            .to_integer()
            .to_i64()
            .ok_or_else(|| Error::InvalidInput("exponent too large".into()))?;
        return s.pow_int(k);
    }
    s.log()?.scale(a).exp()
}

/// `S_{mu nu}` from `W_mu W_nu prod_i F(q^i Q)^{a_i}`.
pub fn s_product(mu: &Partition, nu: &Partition, n: i64) -> Result<QSeries> {
    let ai = ai_coeffs(mu, nu)?;
    let f = staircase(n);
    let mut acc = QSeries::one(n);
    for (i, a) in &ai.a {
        acc = acc.mul(&series_pow_rational(&f.scale_variable_t(2 * i), a)?);
    }
    Ok(acc.mul_coeff(&w_one(mu).mul(&w_one(nu))))
}

/// `S_{mu nu} / S_{00}`, whose coefficients have only simple poles at roots of unity.
pub fn s_ratio(mu: &Partition, nu: &Partition, n: i64) -> QSeries {
    let e = exponent_series(mu, nu, n, true)
        .exp()
        .expect("exponent has no constant term");
    e.mul_coeff(&w_one(mu).mul(&w_one(nu)))
}

/// How the framing factor of the pair `(mu2, mu4)` is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Framing {
    /// `q^{r (k(mu2) - k(mu4)) / 2}`, from `q^{k(mu_j) s_j / 2}` with `s_2 = r = -s_4`.
    Half,
    /// `q^{r (k(mu2) - k(mu4))}`, doubling the exponent above.
    Full,
}

impl Framing {
    fn t_exponent(self, r: i64, k2: i64, k4: i64) -> i64 {
        match self {
            Framing::Half => r * (k2 - k4),
            Framing::Full => 2 * r * (k2 - k4),
        }
    }
}

/// The convention used by every public entry point; see the `framing` tests.
pub const FRAMING: Framing = Framing::Half;

/// Which computation backs `S_{mu nu}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Route {
    Closed,
    Direct,
    Product,
    /// `S_{mu nu} / S_{00}`; sums built from it are divided by `PT_0`.
    Ratio,
}

impl Route {
    fn tag(self) -> &'static str {
        match self {
            Route::Closed => "s",
            Route::Direct => "s-direct",
            Route::Product => "s-product",
            Route::Ratio => "ratio",
        }
    }
}

type MemoKey = (Route, Partition, Partition);

/// Vertex engine: in-process memo plus an optional disk cache.
#[derive(Default)]
pub struct Vertex {
    disk: Option<DiskCache>,
    memo: RwLock<HashMap<MemoKey, QSeries>>,
}

static GLOBAL: LazyLock<Vertex> = LazyLock::new(Vertex::default);

impl Vertex {
    pub fn with_cache(disk: Option<DiskCache>) -> Self {
        Vertex {
            disk,
            memo: RwLock::default(),
        }
    }

    /// The shared in-memory engine used by the free functions.
    pub fn global() -> &'static Vertex {
        &GLOBAL
    }

    /// `S_{mu nu}` (or the ratio) to order `n` through the given route.
    pub fn s(&self, route: Route, mu: &Partition, nu: &Partition, n: i64) -> Result<QSeries> {
        let key = (route, mu.clone(), nu.clone());
        if let Some(s) = self.memo.read().expect("memo poisoned").get(&key) {
            if s.order() >= n {
                return Ok(s.truncate(n));
            }
        }
        if let Some(disk) = &self.disk {
            if let Some(s) = disk.load(route.tag(), mu, nu, n)? {
                self.memo.write().expect("memo poisoned").insert(key, s.clone());
                return Ok(s);
            }
        }
        let s = match route {
            Route::Closed => s_closed(mu, nu, n),
            Route::Direct => s_direct(mu, nu, n),
            Route::Product => s_product(mu, nu, n)?,
            Route::Ratio => s_ratio(mu, nu, n),
        };
        if let Some(disk) = &self.disk {
            disk.store(route.tag(), mu, nu, &s)?;
        }
        let mut memo = self.memo.write().expect("memo poisoned");
        let keep = memo.get(&key).is_none_or(|old| old.order() < s.order());
        if keep {
            memo.insert(key, s.clone());
        }
        Ok(s)
    }

    /// `[Q_c^m]` of the `F_r` partition function (divided by `PT_0` for [`Route::Ratio`]).
    pub fn hirzebruch_term(&self, route: Route, framing: Framing, r: u32, m: u32, n: i64) -> Result<QSeries> {
        let ri = r as i64;
        let pairs: Vec<(Partition, Partition)> = (0..=m)
            .flat_map(|a| {
                let left = enumerate(a);
                let right = enumerate(m - a);
                left.into_iter()
                    .flat_map(move |p2| right.clone().into_iter().map(move |p4| (p2.clone(), p4)))
            })
            .collect();
        let terms: Vec<QSeries> = pairs
            .par_iter()
            .map(|(mu2, mu4)| -> Result<QSeries> {
                let shift = ri * mu2.size() as i64;
                if shift > n {
                    return Ok(QSeries::zero(n));
                }
                let s = self.s(route, mu2, mu4, n - shift)?;
                let tpow = framing.t_exponent(ri, mu2.kappa(), mu4.kappa());
                Ok(s.mul(&s).mul_coeff(&QRat::t_pow(tpow)).shift(shift))
            })
            .collect::<Result<_>>()?;
        let mut total = terms.into_iter().fold(QSeries::zero(n), |a, b| a.add(&b));
        if (ri * m as i64) % 2 == 1 {
            total = total.neg();
        }
        Ok(total)
    }

    /// `[Q_c^m] Z` for `0 <= m <= m_max`, each to `Q^n`, with parity and integrality checked.
    pub fn z_hirzebruch(&self, r: u32, m_max: u32, n: i64) -> Result<BTreeMap<u32, QSeries>> {
        let mut out = BTreeMap::new();
        for m in 0..=m_max {
            let z = self.hirzebruch_term(Route::Closed, FRAMING, r, m, n)?;
            check_pt_coefficients(&z, &format!("r={r}, m={m}"))?;
            out.insert(m, z);
        }
        Ok(out)
    }

    /// `PT_{mc}(q, Q) / PT_0(q, Q)` from the ratio route.
    pub fn pt_ratio(&self, r: u32, m: u32, n: i64) -> Result<QSeries> {
        self.hirzebruch_term(Route::Ratio, FRAMING, r, m, n)
    }

    /// `PT_{mc}(q, Q)` in the raw variable `q`.
    pub fn pt_series(&self, r: u32, m: u32, n: i64) -> Result<QSeries> {
        let z = self.hirzebruch_term(Route::Closed, FRAMING, r, m, n)?;
        check_pt_coefficients(&z, &format!("r={r}, m={m}"))?;
        Ok(z)
    }
}

/// Every coefficient must lie in Q(q) and expand with integer coefficients.
pub fn check_pt_coefficients(z: &QSeries, context: &str) -> Result<()> {
    for (j, c) in z.iter() {
        if !c.has_even_t_powers() {
            return Err(Error::Parity {
                context: format!("{context}, Q^{j}"),
            });
        }
        if !c.has_integral_expansion() {
            return Err(Error::Integrality {
                context: format!("{context}, Q^{j}"),
            });
        }
    }
    Ok(())
}

pub fn z_hirzebruch(r: u32, m_max: u32, n: i64) -> Result<BTreeMap<u32, QSeries>> {
    Vertex::global().z_hirzebruch(r, m_max, n)
}

pub fn pt_series(r: u32, m: u32, n: i64) -> Result<QSeries> {
    Vertex::global().pt_series(r, m, n)
}

/// Coefficients of `z^beta` for `beta = (x_b, x_c)` within `bounds`, by brute force
/// over all partition tuples.
pub fn z_toric(surface: &ToricSurface, bounds: [i64; 2]) -> BTreeMap<[i64; 2], QRat> {
    let nd = surface.len();
    let max_size = |d: &[i64; 2], used: [i64; 2]| -> i64 {
        (0..2)
            .filter(|&a| d[a] > 0)
            .map(|a| (bounds[a] - used[a]) / d[a])
            .min()
            .unwrap_or(0)
            .max(-1)
    };
    // Enumerate size vectors first, then partitions of each size.
    let mut tuples: Vec<Vec<Partition>> = vec![Vec::new()];
    let mut degrees: Vec<[i64; 2]> = vec![[0, 0]];
    for d in &surface.divisor_classes {
        let mut next_t = Vec::new();
        let mut next_d = Vec::new();
        for (t, used) in tuples.iter().zip(&degrees) {
            let top = max_size(d, *used);
            for size in 0..=top {
                let deg = [used[0] + size * d[0], used[1] + size * d[1]];
                for p in enumerate(size as u32) {
                    let mut nt = t.clone();
                    nt.push(p);
                    next_t.push(nt);
                    next_d.push(deg);
                }
            }
        }
        tuples = next_t;
        degrees = next_d;
    }
    let terms: Vec<([i64; 2], QRat)> = tuples
        .par_iter()
        .zip(degrees.par_iter())
        .map(|(mus, deg)| {
            let mut v = QRat::one();
            for j in 0..nd {
                let mu = &mus[j];
                let s = surface.self_intersections[j];
                let mut f = w_two(mu, &mus[(j + 1) % nd]).mul(&QRat::t_pow(mu.kappa() * s));
                if (s * mu.size() as i64) % 2 != 0 {
                    f = f.neg();
                }
                v = v.mul(&f);
            }
            (*deg, v)
        })
        .collect();
    let mut out: BTreeMap<[i64; 2], QRat> = BTreeMap::new();
    for (deg, v) in terms {
        let e = out.entry(deg).or_insert_with(QRat::zero);
        *e = e.add(&v);
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// `PT_{beta, n}` with the `(-q)^n` sign applied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PtInvariant {
    pub j: i64,
    pub n: i64,
    #[serde(serialize_with = "crate::qfield::serialize_bigint")]
    pub value: BigInt,
}

/// Expands each `Q^j` coefficient in `q` through `q^{n_max}` and reads off integers.
pub fn pt_invariants(z: &QSeries, n_max: i64) -> Result<Vec<PtInvariant>> {
    let mut out = Vec::new();
    for (j, c) in z.iter() {
        for (k, v) in c.expand(2 * n_max) {
            if k % 2 != 0 {
                return Err(Error::Parity {
                    context: format!("Q^{j}, t^{k}"),
                });
            }
            if !v.is_integer() {
                return Err(Error::Integrality {
                    context: format!("Q^{j}, q^{}", k / 2),
                });
            }
            let n = k / 2;
            let mut value = v.to_integer();
            if n % 2 != 0 {
                value = -value;
            }
            out.push(PtInvariant { j, n, value });
        }
    }
    Ok(out)
}

/// `prod_{j=1}^{jmax} (1 - q^j Q)^{-2j}` to order `n`, as a literal finite product.
pub fn finite_pt0(jmax: u32, n: i64) -> QSeries {
    let exps = (1..=jmax).map(|j| ((0, j), -2 * j as i64)).collect();
    crate::series::cyclo_product(&exps, n)
}

/// Exact `PT_0 = F(Q)^2` from the staircase recursion.
pub fn pt0_exact(n: i64) -> QSeries {
    let f = staircase(n);
    f.mul(&f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn q_over_1mq_sq(c: i64) -> QRat {
        QRat::q_pow(1)
            .scale(&int(c))
            .div(&QRat::one_minus_q_pow(1).pow(2).unwrap())
            .unwrap()
    }

    #[test]
    fn ai_coeffs_constraints() {
        let e = Partition::empty();
        let ai = ai_coeffs(&e, &e).unwrap();
        assert_eq!(ai.s, 0);
        assert_eq!(ai.a, BTreeMap::from([(0, int(1))]));
        for mu in enumerate_up_to(3) {
            for nu in enumerate_up_to(3) {
                assert!(ai_coeffs(&mu, &nu).unwrap().is_integral(), "({mu}, {nu})");
            }
        }
    }

    #[test]
    fn empty_pair_low_orders() {
        let e = Partition::empty();
        assert_eq!(s_direct(&e, &e, 0), QSeries::one(0));
        let expect = Series::from_coeffs([(0, QRat::one()), (1, q_over_1mq_sq(1))], 1);
        assert_eq!(s_direct(&e, &e, 1), expect);
        assert_eq!(s_closed(&e, &e, 1), expect);
        assert_eq!(s_product(&e, &e, 1).unwrap(), expect);
    }

    #[test]
    fn leading_coefficient_is_w_product() {
        for (mu, nu) in [(p(&[1]), p(&[2])), (p(&[2, 1]), Partition::empty())] {
            assert_eq!(s_closed(&mu, &nu, 2).coeff(0), w_one(&mu).mul(&w_one(&nu)));
        }
    }

    #[test]
    fn three_routes_agree_small() {
        for mu in enumerate_up_to(2) {
            for nu in enumerate_up_to(2) {
                let c = s_closed(&mu, &nu, 3);
                assert_eq!(c, s_direct(&mu, &nu, 3), "direct ({mu}, {nu})");
                assert_eq!(c, s_product(&mu, &nu, 3).unwrap(), "product ({mu}, {nu})");
                let e = Partition::empty();
                assert_eq!(c, s_ratio(&mu, &nu, 3).mul(&s_closed(&e, &e, 3)), "ratio ({mu}, {nu})");
            }
        }
    }

    #[test]
    fn rational_power_squares_back() {
        let s = Series::from_coeffs([(0, QRat::one()), (1, QRat::q_pow(1))], 6);
        let h = series_pow_rational(&s, &rat(1, 2)).unwrap();
        assert_eq!(h.mul(&h), s);
        assert_eq!(h.coeff(2), QRat::q_pow(2).scale(&rat(-1, 8)));
    }

    #[test]
    fn staircase_matches_finite_product_in_q() {
        let n = 5;
        let exact = pt0_exact(n);
        let finite = finite_pt0(n as u32, n);
        for j in 0..=n {
            assert_eq!(exact.coeff(j).expand(2 * n), finite.coeff(j).expand(2 * n), "Q^{j}");
        }
        for r in 0..=2 {
            assert_eq!(z_hirzebruch(r, 0, n).unwrap()[&0], exact);
        }
    }

    #[test]
    fn finite_product_values() {
        let f = finite_pt0(2, 2);
        assert_eq!(f.coeff(1), QRat::laurent_i64(2, &[2, 0, 4]));
        assert_eq!(f.coeff(2), QRat::laurent_i64(4, &[3, 0, 8, 0, 10]));
    }

    #[test]
    fn pt_invariants_sign_convention() {
        let inv = pt_invariants(&pt_series(0, 0, 2).unwrap(), 3).unwrap();
        let get = |j, n| inv.iter().find(|x| x.j == j && x.n == n).map(|x| x.value.clone());
        assert_eq!(get(0, 0), Some(BigInt::from(1)));
        assert_eq!(get(1, 1), Some(BigInt::from(-2)));
        assert_eq!(get(1, 2), Some(BigInt::from(4)));
        assert_eq!(get(2, 2), Some(BigInt::from(3)));
    }

    #[test]
    fn hirzebruch_parity_and_integrality() {
        for r in 0..=2 {
            let z = z_hirzebruch(r, 2, 3).unwrap();
            assert_eq!(z.len(), 3);
        }
    }

    #[test]
    fn r0_m1_pairs_contribute_equally() {
        let v = Vertex::global();
        let a = v.s(Route::Closed, &p(&[1]), &Partition::empty(), 2).unwrap();
        let b = v.s(Route::Closed, &Partition::empty(), &p(&[1]), 2).unwrap();
        assert_eq!(a, b);
        let z = v.hirzebruch_term(Route::Closed, FRAMING, 0, 1, 2).unwrap();
        assert_eq!(z, a.mul(&a).add(&b.mul(&b)));
    }

    #[test]
    fn toric_trivial_bounds() {
        let z = z_toric(&ToricSurface::hirzebruch(1), [0, 0]);
        assert_eq!(z, BTreeMap::from([([0, 0], QRat::one())]));
    }

    #[test]
    fn toric_matches_hirzebruch() {
        for r in 0..=1 {
            let zt = z_toric(&ToricSurface::hirzebruch(r), [3, 1]);
            let zh = z_hirzebruch(r, 1, 3).unwrap();
            for m in 0..=1 {
                for j in 0..=3 {
                    let t = zt.get(&[j, m as i64]).cloned().unwrap_or_default();
                    assert_eq!(t, zh[&m].coeff(j), "r={r}, m={m}, Q^{j}");
                }
            }
        }
    }

    #[test]
    fn framing_convention_is_half() {
        // At r = 1, m = 2 the pairs ((1,1), empty) and ((2), empty) have nonzero
        // kappa, so the two readings differ; only one reproduces the full N-leg sum.
        let zt = z_toric(&ToricSurface::hirzebruch(1), [3, 2]);
        let agrees = |framing| {
            let z = Vertex::global()
                .hirzebruch_term(Route::Closed, framing, 1, 2, 3)
                .unwrap();
            (0..=3).all(|j| zt.get(&[j, 2]).cloned().unwrap_or_default() == z.coeff(j))
        };
        assert!(agrees(Framing::Half));
        assert!(!agrees(Framing::Full));
        assert_eq!(FRAMING, Framing::Half);
    }

    #[test]
    fn projective_plane_degree_one() {
        let z = z_toric(&ToricSurface::projective_plane(), [1, 0]);
        assert_eq!(z[&[1, 0]], q_over_1mq_sq(-3));
    }

    #[test]
    fn surface_validation() {
        assert!(ToricSurface::new(vec![[1, 0]; 2], vec![0; 2]).is_err());
        assert!(ToricSurface::new(vec![[1, 0], [0, 0], [0, 1]], vec![0; 3]).is_err());
        assert!(ToricSurface::new(vec![[1, 0]; 3], vec![1; 3]).is_ok());
    }

    #[test]
    fn disk_cache_backs_the_engine() {
        let dir = tempfile::tempdir().unwrap();
        let mu = p(&[2]);
        let nu = p(&[1]);
        let first = Vertex::with_cache(Some(DiskCache::new(dir.path()).unwrap()));
        let s = first.s(Route::Closed, &mu, &nu, 3).unwrap();
        let cache = DiskCache::new(dir.path()).unwrap();
        assert_eq!(cache.load("s", &mu, &nu, 3).unwrap(), Some(s.clone()));
        let second = Vertex::with_cache(Some(cache));
        assert_eq!(second.s(Route::Closed, &mu, &nu, 2).unwrap(), s.truncate(2));
    }
}
