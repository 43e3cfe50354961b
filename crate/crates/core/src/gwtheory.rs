//! The substitution `q = e^{iu}`, Gromov-Witten extraction from `log Z`,
//! the modified exceptional series, and membership in the rings `R_{a,b}`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::coeff::{int, Coeff};
use crate::error::{Error, Result};
use crate::gauss::GaussRat;
use crate::qfield::QRat;
use crate::rationality::{fit_auto, DenomSpec, RationalFit};
use crate::series::{polylog_series, to_gaussian, GSeries, QSeries, Series, USeries};
use crate::vertex::{Route, Vertex, FRAMING};

/// `sum_k c_k (k + off)^s` for `s = 0..=n`, the Taylor moments of `t^off sum c_k t^k` at `t = 1`.
fn moments(off: i64, coeffs: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n + 1];
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let x = BigInt::from(off + k as i64);
        let mut p = c.clone();
        for m in out.iter_mut() {
            *m += &p;
            p *= &x;
        }
    }
    out
}

/// `sum_s (i/2)^s u^s / s! * moment_s`, i.e. a Laurent polynomial in `t = e^{iu/2}`.
fn exp_expand(off: i64, coeffs: &[BigInt], order: i64) -> Series<GaussRat> {
    let n = order.max(0) as usize;
    let mom = moments(off, coeffs, n);
    let mut fact = BigInt::one();
    let mut two = BigInt::one();
    let terms = mom.into_iter().enumerate().map(|(s, m)| {
        if s > 0 {
            fact *= BigInt::from(s);
            two *= 2;
        }
        let c = BigRational::new(m, &fact * &two);
        (s as i64, GaussRat::i_pow(s as i64).scale(&c))
    });
    Series::from_coeffs(terms.collect::<Vec<_>>(), order)
}

/// Laurent expansion of `a(q)` at `q = e^{iu}` through `u^{u_order}`.
pub fn to_u_series(a: &QRat, u_order: i64) -> Result<Series<GaussRat>> {
    if a.is_zero() {
        return Ok(Series::zero(u_order));
    }
    let den = a.denominator();
    // Valuation of the denominator in u: first nonvanishing moment.
    let mut v = 0usize;
    loop {
        let m = moments(0, den, v);
        if !m[v].is_zero() {
            break;
        }
        v += 1;
        if v > den.len() {
            return Err(Error::DivisionByZero);
        }
    }
    let v = v as i64;
    let num = exp_expand(a.offset(), a.numerator(), u_order + v);
    let d = exp_expand(0, den, u_order + 2 * v);
    Ok(num.div(&d)?.truncate(u_order))
}

/// Lifts a `Q`-series with `Q(t)` coefficients to a `u`-series with Gaussian `Q`-polynomial coefficients.
pub fn useries_from_qseries(s: &QSeries, u_order: i64) -> Result<USeries> {
    let n = s.order();
    let mut by_u: BTreeMap<i64, Vec<(i64, GaussRat)>> = BTreeMap::new();
    for (j, c) in s.iter() {
        for (h, v) in to_u_series(c, u_order)?.iter() {
            by_u.entry(h).or_default().push((j, v.clone()));
        }
    }
    Ok(Series::from_coeffs(
        by_u.into_iter().map(|(h, t)| (h, Series::from_coeffs(t, n))),
        u_order,
    ))
}

/// `GW_{g, m c + j b}` for one surface.
#[derive(Clone, Debug, Serialize)]
pub struct GWTable {
    pub r: u32,
    pub g_max: u32,
    pub m_max: u32,
    pub j_max: i64,
    #[serde(serialize_with = "serialize_entries")]
    pub entries: BTreeMap<(u32, u32, i64), BigRational>,
}

fn serialize_entries<S: serde::Serializer>(
    e: &BTreeMap<(u32, u32, i64), BigRational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(e.len()))?;
    for ((g, m, j), v) in e {
        seq.serialize_element(&serde_json::json!({
            "g": g, "m": m, "j": j, "value": v.to_string(),
        }))?;
    }
    seq.end()
}

impl GWTable {
    pub fn get(&self, g: u32, m: u32, j: i64) -> BigRational {
        self.entries.get(&(g, m, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The column `j -> GW_{g, mc + jb}` for `j = 0..=j_max`.
    pub fn column(&self, g: u32, m: u32) -> Vec<BigRational> {
        (0..=self.j_max).map(|j| self.get(g, m, j)).collect()
    }

    /// `g,m,j,value_num,value_den`, zero entries omitted.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("g,m,j,value_num,value_den\n");
        for ((g, m, j), v) in &self.entries {
            let _ = writeln!(out, "{g},{m},{j},{},{}", v.numer(), v.denom());
        }
        out
    }
}

/// Real part of a Gaussian coefficient that must be real.
fn real(c: &GaussRat, ctx: impl Fn() -> String) -> Result<BigRational> {
    if !c.is_real() {
        return Err(Error::NonReal { context: ctx() });
    }
    Ok(c.re.clone())
}

/// `[Q_c^m] log Z` for `m = 0..=m_max`; `m = 0` is `log PT_0`, the rest come from
/// `X_m = Z_m / Z_0` through `m L_m = m X_m - sum_{k<m} k L_k X_{m-k}`.
pub fn log_z(v: &Vertex, r: u32, m_max: u32, n: i64) -> Result<Vec<QSeries>> {
    let z0 = v.hirzebruch_term(Route::Closed, FRAMING, r, 0, n)?;
    let mut logs = vec![z0.log()?];
    let xs: Vec<QSeries> = (1..=m_max).map(|m| v.pt_ratio(r, m, n)).collect::<Result<_>>()?;
    let mut rel: Vec<QSeries> = vec![QSeries::zero(n)];
    for m in 1..=m_max as usize {
        let mut acc = xs[m - 1].scale(&int(m as i64));
        for k in 1..m {
            acc = acc.sub(&rel[k].mul(&xs[m - k - 1]).scale(&int(k as i64)));
        }
        rel.push(acc.scale(&BigRational::new(BigInt::one(), BigInt::from(m))));
    }
    logs.extend(rel.into_iter().skip(1));
    Ok(logs)
}

/// Reads `GW_{g, mc + jb}` as `[u^{2g-2} Q_c^m Q^j] log Z` after `q = e^{iu}`.
pub fn gw_extract_with(v: &Vertex, r: u32, m_max: u32, n: i64, g_max: u32) -> Result<GWTable> {
    let logs = log_z(v, r, m_max, n)?;
    let u_order = 2 * g_max as i64 - 2;
    let mut entries = BTreeMap::new();
    for (m, l) in logs.iter().enumerate() {
        for (j, c) in l.iter() {
            let u = to_u_series(c, u_order + 1)?;
            for (h, val) in u.iter() {
                let ctx = || format!("r={r}, m={m}, j={j}, u^{h}");
                if h % 2 != 0 {
                    return Err(Error::NonReal {
                        context: format!("odd power: {}", ctx()),
                    });
                }
                let x = real(val, ctx)?;
                let g = (h + 2) / 2;
                if h > u_order || (m == 0 && j == 0) {
                    continue;
                }
                entries.insert((g as u32, m as u32, j), x);
            }
        }
    }
    Ok(GWTable {
        r,
        g_max,
        m_max,
        j_max: n,
        entries,
    })
}

pub fn gw_extract(r: u32, m_max: u32, n: i64, g_max: u32) -> Result<GWTable> {
    gw_extract_with(Vertex::global(), r, m_max, n, g_max)
}

/// `log PT_0 + 2 u^{-2} Li_3(Q) + Li_1(Q) / 6` as a `u`-series.
pub fn tilde_log_pt0(pt0: &QSeries, u_order: i64) -> Result<USeries> {
    let n = pt0.order();
    let l = useries_from_qseries(&pt0.log()?, u_order)?;
    let li3 = to_gaussian(&polylog_series(3, n)).scale(&int(2));
    let li1 = to_gaussian(&polylog_series(1, n)).scale(&BigRational::new(1.into(), 6.into()));
    let corr = Series::from_coeffs([(-2, li3), (0, li1)], u_order);
    Ok(l.add(&corr))
}

/// `PT_0 exp(2 u^{-2} Li_3 + Li_1 / 6)` to `Q^n` and `u^{u_order}`.
pub fn tilde_pt0(n: i64, u_order: i64) -> Result<USeries> {
    tilde_pt0_from(&crate::vertex::pt0_exact(n), u_order)
}

pub fn tilde_pt0_from(pt0: &QSeries, u_order: i64) -> Result<USeries> {
    tilde_log_pt0(pt0, u_order)?.exp()
}

/// `Q^a f_h(1/Q) = (-1)^h f_h(Q)` per `u`-degree, with denominator `(1-Q)^{b+h}`.
#[derive(Clone, Debug, Serialize)]
pub struct RMembership {
    pub a: i64,
    pub b: i64,
    pub per_h: BTreeMap<i64, HCheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HCheck {
    pub denominator_exponent: i64,
    pub fit: Option<FitSummary>,
    pub symmetry_ok: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FitSummary {
    pub numerator: BTreeMap<i64, String>,
    pub surplus: i64,
}

impl RMembership {
    pub fn ok(&self) -> bool {
        self.per_h.values().all(|c| c.symmetry_ok)
    }
}

fn summarize(fit: &RationalFit<GaussRat>) -> FitSummary {
    FitSummary {
        numerator: fit.numerator.iter().map(|(k, c)| (*k, c.to_string())).collect(),
        surplus: fit.surplus,
    }
}

/// Checks every `u`-degree from the valuation (or `-2`) through `h_max`.
pub fn verify_r(series: &USeries, a: i64, b: i64, h_max: i64) -> RMembership {
    let lo = series.valuation().unwrap_or(0).min(-2);
    let mut per_h = BTreeMap::new();
    for h in lo..=h_max {
        let f: GSeries = series.coeff(h);
        let e = b + h;
        let check = if f.is_zero() {
            HCheck {
                denominator_exponent: e,
                fit: None,
                symmetry_ok: true,
                error: None,
            }
        } else if e < 0 {
            HCheck {
                denominator_exponent: e,
                fit: None,
                symmetry_ok: false,
                error: Some(format!("nonzero coefficient needs denominator exponent {e} < 0")),
            }
        } else {
            let order = if f.is_exact() {
                series_q_order(series)
            } else {
                f.order()
            };
            let f = if f.is_exact() { f.truncate(order) } else { f };
            match fit_auto(&f, &DenomSpec::one_minus_q_pow(e as u32)) {
                Ok(fit) => {
                    let sign = if h % 2 == 0 { 1 } else { -1 };
                    HCheck {
                        denominator_exponent: e,
                        symmetry_ok: fit.check_q_functional(a, sign),
                        fit: Some(summarize(&fit)),
                        error: None,
                    }
                }
                Err(err) => HCheck {
                    denominator_exponent: e,
                    fit: None,
                    symmetry_ok: false,
                    error: Some(err.to_string()),
                },
            }
        };
        per_h.insert(h, check);
    }
    RMembership { a, b, per_h }
}

fn series_q_order(s: &USeries) -> i64 {
    s.iter().map(|(_, c)| c.order()).min().unwrap_or(0)
}

/// Finite differences of order `4m + 2g - 2` over a window of a GW column.
#[derive(Clone, Debug, Serialize)]
pub struct PolynomialityReport {
    pub g: u32,
    pub m: u32,
    pub window: (i64, i64),
    pub difference_order: u32,
    #[serde(serialize_with = "serialize_rats")]
    pub differences: Vec<BigRational>,
    /// Smallest `k` whose `k`-th differences vanish on the window, if any.
    pub degree_bound: Option<u32>,
    pub ok: bool,
}

fn serialize_rats<S: serde::Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn differences(v: &[BigRational], k: u32) -> Vec<BigRational> {
    let mut d = v.to_vec();
    for _ in 0..k {
        d = d.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    d
}

pub fn polynomiality_values(values: &[BigRational], g: u32, m: u32, window: (i64, i64)) -> Result<PolynomialityReport> {
    let k = 4 * m + 2 * g - 2;
    if (values.len() as i64) < k as i64 + 1 {
        return Err(Error::InvalidInput(format!(
            "window of length {} is too short for differences of order {k}",
            values.len()
        )));
    }
    let diffs = differences(values, k);
    let degree_bound = (0..values.len() as u32).find(|&d| differences(values, d).iter().all(Zero::is_zero));
    Ok(PolynomialityReport {
        g,
        m,
        window,
        difference_order: k,
        ok: diffs.iter().all(Zero::is_zero),
        differences: diffs,
        degree_bound,
    })
}

pub fn polynomiality_check(table: &GWTable, g: u32, m: u32, window: (i64, i64)) -> Result<PolynomialityReport> {
    if window.1 > table.j_max || window.0 < 0 || window.0 > window.1 {
        return Err(Error::InvalidInput(format!(
            "window {window:?} outside computed range 0..={}",
            table.j_max
        )));
    }
    let values: Vec<BigRational> = (window.0..=window.1).map(|j| table.get(g, m, j)).collect();
    polynomiality_values(&values, g, m, window)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;
    use crate::series::polylog_neg;

    fn g(re: BigRational, im: BigRational) -> GaussRat {
        GaussRat::new(re, im)
    }

    #[test]
    fn u_expansion_examples() {
        let q = to_u_series(&QRat::q_pow(1), 3).unwrap();
        assert_eq!(q.coeff(0), GaussRat::one());
        assert_eq!(q.coeff(1), GaussRat::i());
        assert_eq!(q.coeff(2), g(rat(-1, 2), int(0)));
        assert_eq!(q.coeff(3), g(int(0), rat(-1, 6)));

        let a = QRat::one_minus_q_pow(1).inv().unwrap();
        let s = to_u_series(&a, 1).unwrap();
        assert_eq!(s.coeff(-1), GaussRat::i());
        assert_eq!(s.coeff(0), g(rat(1, 2), int(0)));
        assert_eq!(s.coeff(1), g(int(0), rat(-1, 12)));

        let b = QRat::q_pow(1)
            .scale(&int(2))
            .div(&QRat::one_minus_q_pow(1).pow(2).unwrap())
            .unwrap();
        let s = to_u_series(&b, 2).unwrap();
        assert_eq!(s.coeff(-2), g(int(-2), int(0)));
        assert_eq!(s.coeff(-1), GaussRat::zero());
        assert_eq!(s.coeff(0), g(rat(-1, 6), int(0)));
        assert_eq!(s.coeff(1), GaussRat::zero());
        assert_eq!(s.coeff(2), g(rat(-1, 120), int(0)));
        assert_eq!(s.valuation(), Some(-2));
    }

    #[test]
    fn fiber_class_closed_form() {
        let t = gw_extract(0, 0, 4, 1).unwrap();
        for j in 1..=4i64 {
            assert_eq!(t.get(0, 0, j), rat(-2, j * j * j), "g=0, j={j}");
            assert_eq!(t.get(1, 0, j), rat(-1, 6 * j), "g=1, j={j}");
        }
        assert!(!t.entries.contains_key(&(0, 0, 0)));
    }

    #[test]
    fn tilde_pt0_leading_terms() {
        let n = 6;
        let t = tilde_pt0(n, 4).unwrap();
        assert_eq!(t.valuation(), Some(0));
        assert!(t.coeff(-2).is_zero() && t.coeff(-1).is_zero() && t.coeff(1).is_zero());
        assert_eq!(t.coeff(0), Series::one(crate::series::EXACT));
        let li = crate::series::expand_rational(&polylog_neg(2).unwrap(), n);
        assert_eq!(t.coeff(2), to_gaussian(&li).scale(&rat(-1, 120)));
    }

    #[test]
    fn membership_examples() {
        let n = 10;
        let li = to_gaussian(&crate::series::expand_rational(&polylog_neg(2).unwrap(), n));
        let single: USeries = Series::from_coeffs([(2, li)], 4);
        let m = verify_r(&single, 0, 0, 2);
        assert!(m.ok(), "{m:?}");
        assert_eq!(m.per_h[&2].fit.as_ref().unwrap().numerator.len(), 1);
        assert!(verify_r(&USeries::zero(4), 0, 0, 4).ok());
    }

    #[test]
    fn polynomiality_examples() {
        let c = vec![int(5); 7];
        assert!(polynomiality_values(&c, 0, 1, (0, 6)).unwrap().ok);
        let p: Vec<BigRational> = (0..7).map(|j| int(j * j)).collect();
        let rep = polynomiality_values(&p, 0, 1, (0, 6)).unwrap();
        assert!(!rep.ok);
        assert_eq!(rep.degree_bound, Some(3));
        assert!(polynomiality_values(&p[..2], 0, 1, (0, 1)).is_err());
    }
}
