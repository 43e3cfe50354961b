//! Rational reconstruction of truncated series against prescribed cyclotomic
//! denominators, and exact checks of the `q -> 1/q` and `Q -> 1/Q` functional
//! equations on the reconstructed functions.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::series::{QSeries, Series, EXACT};
use crate::vertex::Vertex;

/// Minimum number of matched coefficients beyond the numerator window.
pub const MIN_SURPLUS: i64 = 3;

/// `Q^shift prod (1 - Q^a)^e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DenomSpec {
    pub factors: Vec<(u32, u32)>,
    pub shift: i64,
}

impl DenomSpec {
    pub fn one_minus_q_pow(e: u32) -> Self {
        DenomSpec {
            factors: if e == 0 { vec![] } else { vec![(1, e)] },
            shift: 0,
        }
    }

    /// Sum of the exponents `e`.
    pub fn total_exponent(&self) -> i64 {
        self.factors.iter().map(|&(_, e)| e as i64).sum()
    }

    /// Sum of `a * e`, the degree of the cyclotomic part.
    pub fn degree(&self) -> i64 {
        self.factors.iter().map(|&(a, e)| a as i64 * e as i64).sum()
    }

    /// The denominator as an exact polynomial series.
    pub fn series<C: Coeff>(&self) -> Series<C> {
        let mut acc = Series::one(EXACT);
        for &(a, e) in &self.factors {
            let f = Series::from_coeffs([(0, C::one()), (a as i64, C::one().neg_ref())], EXACT);
            for _ in 0..e {
                acc = acc.mul(&f);
            }
        }
        acc.shift(self.shift)
    }
}

impl fmt::Display for DenomSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shift != 0 {
            write!(f, "Q^{} ", self.shift)?;
        }
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (a, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "(1-Q^{a})^{e}")?;
        }
        Ok(())
    }
}

/// `numerator / denominator` recovered from a truncated series.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFit<C> {
    pub numerator: BTreeMap<i64, C>,
    pub denom: DenomSpec,
    pub surplus: i64,
    /// Truncation order of the fitted series.
    pub order: i64,
}

impl<C: Coeff> RationalFit<C> {
    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// Re-expands the fitted function to `order`.
    pub fn expand(&self, order: i64) -> Result<Series<C>> {
        let shift = self.denom.shift;
        let unshifted = DenomSpec {
            factors: self.denom.factors.clone(),
            shift: 0,
        };
        // The numerator is exact; the cyclotomic part has constant term 1.
        let num = Series::from_coeffs(self.numerator.iter().map(|(k, c)| (*k, c.clone())), order + shift);
        let den: Series<C> = unshifted.series::<C>().truncate(order + shift);
        Ok(num.div(&den)?.shift(-shift).truncate(order))
    }

    /// Exact check of `Q^a f(1/Q) = sign f(Q)` on the numerator.
    ///
    /// With `f = p / (Q^s prod (1-Q^a_i)^e_i)`, `E = sum e_i`, `A = sum a_i e_i`,
    /// the identity holds iff `(-1)^E Q^{a + 2s + A} p(1/Q) = sign p(Q)`.
    pub fn check_q_functional(&self, a: i64, sign: i64) -> bool {
        let k = a + 2 * self.denom.shift + self.denom.degree();
        let flip = (self.denom.total_exponent() % 2 == 1) != (sign < 0);
        self.numerator.iter().all(|(d, c)| {
            let want = if flip { c.neg_ref() } else { c.clone() };
            self.numerator.get(&(k - d)).is_some_and(|o| *o == want)
        })
    }

    /// The unique `a` in `range` with `Q^a f(1/Q) = sign f(Q)`, or `None`.
    pub fn find_exponent(&self, range: (i64, i64), sign: i64) -> Result<Option<i64>> {
        if self.is_zero() {
            return Ok(None);
        }
        let hits: Vec<i64> = (range.0..=range.1)
            .filter(|&a| self.check_q_functional(a, sign))
            .collect();
        match hits.as_slice() {
            [] => Ok(None),
            [a] => Ok(Some(*a)),
            _ => Err(Error::Internal(format!(
                "several exponents {hits:?} fit a nonzero function"
            ))),
        }
    }
}

/// Multiplies by the denominator and requires every coefficient outside `window` to vanish.
pub fn fit_rational<C: Coeff>(series: &Series<C>, denom: &DenomSpec, window: (i64, i64)) -> Result<RationalFit<C>> {
    if series.is_exact() {
        return Err(Error::InvalidInput("fit_rational needs a truncated series".into()));
    }
    let p = series.mul(&denom.series::<C>());
    let known = p.order();
    let surplus = known - window.1;
    if surplus < MIN_SURPLUS {
        return Err(Error::InsufficientSurplus {
            order: series.order(),
            surplus,
        });
    }
    if let Some((d, _)) = p.iter().find(|(d, _)| *d < window.0 || *d > window.1) {
        return Err(Error::NotRational { degree: d });
    }
    Ok(RationalFit {
        numerator: p.iter().map(|(d, c)| (d, c.clone())).collect(),
        denom: denom.clone(),
        surplus,
        order: series.order(),
    })
}

/// Fits with the window `[min(0, val), deg D + shift]`, widened up to the surplus limit.
pub fn fit_auto<C: Coeff>(series: &Series<C>, denom: &DenomSpec) -> Result<RationalFit<C>> {
    let lo = series.valuation().unwrap_or(0).min(0) + denom.shift.min(0);
    let known = series.order().saturating_add(denom.shift);
    let hi_max = known - MIN_SURPLUS;
    let start = (denom.degree() + denom.shift).max(lo);
    if start > hi_max {
        return Err(Error::InsufficientSurplus {
            order: series.order(),
            surplus: known - start,
        });
    }
    let mut last = None;
    for hi in start..=hi_max {
        match fit_rational(series, denom, (lo, hi)) {
            Ok(fit) => return Ok(fit),
            Err(Error::NotRational { degree }) if degree > hi => last = Some(degree),
            Err(e) => return Err(e),
        }
    }
    Err(Error::NotRational {
        degree: last.unwrap_or(hi_max),
    })
}

/// Outcome of the coefficientwise `q -> 1/q` check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QInversion {
    pub ok: bool,
    pub witness: Option<i64>,
}

pub fn check_q_inversion(series: &QSeries) -> QInversion {
    let witness = series.iter().find(|(_, c)| c.invert_t() != **c).map(|(j, _)| j);
    QInversion {
        ok: witness.is_none(),
        witness,
    }
}

/// `PT_{mc} / PT_0` by series division.
pub fn normalized_pt(r: u32, m: u32, n: i64) -> Result<QSeries> {
    normalized_pt_with(Vertex::global(), r, m, n)
}

pub fn normalized_pt_with(v: &Vertex, r: u32, m: u32, n: i64) -> Result<QSeries> {
    if m == 0 {
        return Err(Error::InvalidInput("normalized_pt needs m >= 1".into()));
    }
    let num = v.pt_series(r, m, n)?;
    let den = v.pt_series(r, 0, n)?;
    num.div(&den)
}

/// Checks `normalized_pt` against the ratio route; both are exact.
pub fn normalized_pt_checked(v: &Vertex, r: u32, m: u32, n: i64) -> Result<QSeries> {
    let a = normalized_pt_with(v, r, m, n)?;
    let b = v.pt_ratio(r, m, n)?;
    if a != b {
        return Err(Error::Internal(format!("PT ratio routes disagree for r={r}, m={m}")));
    }
    Ok(a)
}

/// A class `(r w, beta = m c + j b, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WeylClass {
    pub r: i64,
    pub m: i64,
    pub j: i64,
    pub n: i64,
}

/// `w . beta = K . beta` on `F_r`, with `c^2 = -r`, `b^2 = 0`, `b.c = 1`.
pub fn w_dot(r_surface: i64, m: i64, j: i64) -> i64 {
    m * (r_surface - 2) - 2 * j
}

/// `(r w, beta, n) -> (r w, beta + (w.beta - 2r) b, -n)`.
pub fn weyl_reflect(cls: WeylClass, r_surface: i64) -> WeylClass {
    let shift = w_dot(r_surface, cls.m, cls.j) - 2 * cls.r;
    WeylClass {
        r: cls.r,
        m: cls.m,
        j: cls.j + shift,
        n: -cls.n,
    }
}

/// One row of a functional-equation report.
#[derive(Clone, Debug, Serialize)]
pub struct FunctionalReport {
    pub case: String,
    pub denom_spec: String,
    pub numerator: BTreeMap<i64, String>,
    pub surplus: i64,
    /// `a` with `Q^a f(1/Q) = f(Q)`.
    pub a_found: Option<i64>,
    /// The same exponent in the form `f(1/Q) = Q^e f(Q)`, i.e. `e = -a_found`.
    pub e_found: Option<i64>,
    /// `-K . beta = m (2 - r)`.
    pub a_anticanonical: i64,
    /// `2m`.
    pub a_doubled: i64,
    pub matches: Vec<String>,
    pub q_inversion: Option<bool>,
}

impl FunctionalReport {
    pub fn new<C: Coeff + fmt::Display>(
        case: String,
        fit: &RationalFit<C>,
        r: u32,
        m: u32,
        q_inversion: Option<bool>,
    ) -> Result<Self> {
        let a_found = fit.find_exponent((-64, 64), 1)?;
        let e_found = a_found.map(|a| -a);
        let a_anticanonical = m as i64 * (2 - r as i64);
        let a_doubled = 2 * m as i64;
        let mut matches = Vec::new();
        for (name, pred) in [("anticanonical", a_anticanonical), ("doubled", a_doubled)] {
            if a_found == Some(pred) {
                matches.push(format!("{name}: Q^a f(1/Q) = f(Q)"));
            }
            if e_found == Some(pred) {
                matches.push(format!("{name}: f(1/Q) = Q^a f(Q)"));
            }
        }
        Ok(FunctionalReport {
            case,
            denom_spec: fit.denom.to_string(),
            numerator: fit.numerator.iter().map(|(k, c)| (*k, c.to_string())).collect(),
            surplus: fit.surplus,
            a_found,
            e_found,
            a_anticanonical,
            a_doubled,
            matches,
            q_inversion,
        })
    }
}

/// Convenience: expand the `Q^j` coefficients of a `QSeries` exactly as a check.
pub fn reproduces<C: Coeff>(fit: &RationalFit<C>, series: &Series<C>) -> Result<bool> {
    Ok(fit.expand(series.order())? == *series)
}

/// `PT_{mc}` ratio for tests and the CLI: prefers the fast route.
pub fn pt_ratio(r: u32, m: u32, n: i64) -> Result<QSeries> {
    Vertex::global().pt_ratio(r, m, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::int;
    use crate::qfield::QRat;
    use num_rational::BigRational;

    fn rs(coeffs: &[(i64, BigRational)], order: i64) -> Series<BigRational> {
        Series::from_coeffs(coeffs.iter().cloned(), order)
    }

    fn poly_fit(num: &[(i64, i64)], denom: DenomSpec) -> RationalFit<BigRational> {
        RationalFit {
            numerator: num.iter().map(|&(d, c)| (d, int(c))).collect(),
            denom,
            surplus: 3,
            order: 10,
        }
    }

    #[test]
    fn fit_examples() {
        let geom = rs(&(0..=8).map(|k| (k, int(1))).collect::<Vec<_>>(), 8);
        let fit = fit_rational(&geom, &DenomSpec::one_minus_q_pow(1), (0, 0)).unwrap();
        assert_eq!(fit.numerator, BTreeMap::from([(0, int(1))]));
        assert_eq!(fit.surplus, 8);
        assert!(reproduces(&fit, &geom).unwrap());

        let odd = rs(&(0..=8).map(|k| (k, int(2 * k + 1))).collect::<Vec<_>>(), 8);
        let fit = fit_rational(&odd, &DenomSpec::one_minus_q_pow(2), (0, 1)).unwrap();
        assert_eq!(fit.numerator, BTreeMap::from([(0, int(1)), (1, int(1))]));

        let mut fact = BigRational::from_integer(1.into());
        let mut terms = vec![(0, fact.clone())];
        for k in 1..=8 {
            fact /= int(k);
            terms.push((k, fact.clone()));
        }
        let e = rs(&terms, 8);
        assert!(matches!(
            fit_rational(&e, &DenomSpec::one_minus_q_pow(2), (0, 2)),
            Err(Error::NotRational { degree: 3 })
        ));
        assert!(matches!(
            fit_auto(&e, &DenomSpec::one_minus_q_pow(2)),
            Err(Error::NotRational { .. })
        ));
        assert!(matches!(
            fit_rational(&geom, &DenomSpec::one_minus_q_pow(1), (0, 6)),
            Err(Error::InsufficientSurplus { .. })
        ));
    }

    #[test]
    fn auto_window_widens() {
        // (1 + Q)^3 / (1 - Q): numerator degree 3 exceeds the default window [0, 1].
        let f = rs(&[(0, int(1)), (1, int(3)), (2, int(3)), (3, int(1))], EXACT);
        let s = f
            .div(&DenomSpec::one_minus_q_pow(1).series::<BigRational>().truncate(10))
            .unwrap();
        let fit = fit_auto(&s, &DenomSpec::one_minus_q_pow(1)).unwrap();
        assert_eq!(fit.numerator.len(), 4);
        assert_eq!(fit.surplus, 7);
    }

    #[test]
    fn functional_equation_examples() {
        let d2 = DenomSpec::one_minus_q_pow(2);
        let d1 = DenomSpec::one_minus_q_pow(1);
        // Q / (1-Q)^2
        assert!(poly_fit(&[(1, 1)], d2.clone()).check_q_functional(0, 1));
        // (1+Q)/(1-Q), sign -1
        assert!(poly_fit(&[(0, 1), (1, 1)], d1.clone()).check_q_functional(0, -1));
        assert!(!poly_fit(&[(0, 1), (1, 1)], d1.clone()).check_q_functional(0, 1));
        // 1/(1-Q)
        assert!(!poly_fit(&[(0, 1)], d1.clone()).check_q_functional(0, 1));
        assert_eq!(
            poly_fit(&[(1, 1)], d2.clone()).find_exponent((-10, 10), 1).unwrap(),
            Some(0)
        );
        assert_eq!(
            poly_fit(&[(2, 1)], DenomSpec::one_minus_q_pow(0))
                .find_exponent((-10, 10), 1)
                .unwrap(),
            Some(4)
        );
        assert_eq!(poly_fit(&[], d1).find_exponent((-10, 10), 1).unwrap(), None);
        // -2/(1-Q)^2 satisfies f(1/Q) = Q^2 f(Q), i.e. a = -2 in the Q^a f(1/Q) = f(Q) form.
        assert_eq!(poly_fit(&[(0, -2)], d2).find_exponent((-10, 10), 1).unwrap(), Some(-2));
    }

    #[test]
    fn shifted_denominator() {
        // f = 1/(Q (1-Q)) = Q^-1 + 1 + Q + ...
        let s = rs(&(-1..=8).map(|k| (k, int(1))).collect::<Vec<_>>(), 8);
        let d = DenomSpec {
            factors: vec![(1, 1)],
            shift: 1,
        };
        let fit = fit_auto(&s, &d).unwrap();
        assert_eq!(fit.numerator, BTreeMap::from([(0, int(1))]));
        assert!(reproduces(&fit, &s).unwrap());
        // f(1/Q) = Q/(1 - 1/Q) = -Q^2/(1-Q) = -Q^3 f(Q).
        assert_eq!(fit.find_exponent((-10, 10), -1).unwrap(), Some(-3));
    }

    #[test]
    fn q_inversion_examples() {
        let e = QSeries::one(4);
        assert!(check_q_inversion(&e).ok);
        let bad = Series::from_coeffs([(0, QRat::one()), (1, QRat::q_pow(1))], 3);
        assert_eq!(
            check_q_inversion(&bad),
            QInversion {
                ok: false,
                witness: Some(1)
            }
        );
        let l = crate::vertex::pt0_exact(4).log().unwrap();
        assert!(check_q_inversion(&l).ok);
    }

    #[test]
    fn weyl_examples() {
        let c = WeylClass { r: 0, m: 1, j: 0, n: 5 };
        assert_eq!(
            weyl_reflect(c, 0),
            WeylClass {
                r: 0,
                m: 1,
                j: -2,
                n: -5
            }
        );
        let z = WeylClass { r: 0, m: 0, j: 0, n: 3 };
        assert_eq!(weyl_reflect(z, 1), WeylClass { n: -3, ..z });
        for rs in -3..=3 {
            for r in -2..=2 {
                let x = WeylClass { r, m: 2, j: -1, n: 7 };
                assert_eq!(weyl_reflect(weyl_reflect(x, rs), rs), x);
            }
        }
    }
}
