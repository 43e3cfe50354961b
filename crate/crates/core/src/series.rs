//! Truncated Laurent series over an exact coefficient ring, and polylogarithms.
//!
//! A series with order `N` knows every coefficient of degree `<= N`; stored
//! keys never exceed `N` and absent keys are zero. Order [`EXACT`] marks a
//! finite series that is known exactly (constants, polynomials).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::coeff::{int, Coeff};
use crate::error::{Error, Result};
use crate::gauss::GaussRat;
use crate::qfield::QRat;

pub const EXACT: i64 = i64::MAX;

#[derive(Clone, Debug, PartialEq)]
pub struct Series<C> {
    order: i64,
    coeffs: BTreeMap<i64, C>,
}

/// Laurent series in `Q` with coefficients in Q(t).
pub type QSeries = Series<QRat>;
/// Laurent series with rational coefficients.
pub type RSeries = Series<BigRational>;
/// Truncated polynomial in `Q` over the Gaussian rationals.
pub type GSeries = Series<GaussRat>;
/// Laurent series in `u` whose coefficients are truncated `Q`-series over Gaussian rationals.
pub type USeries = Series<GSeries>;

impl<C: Coeff> Series<C> {
    pub fn zero(order: i64) -> Self {
        Series {
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(order: i64) -> Self {
        Series::constant(C::one(), order)
    }

    pub fn constant(c: C, order: i64) -> Self {
        Series::monomial(c, 0, order)
    }

    pub fn monomial(c: C, degree: i64, order: i64) -> Self {
        let mut s = Series::zero(order);
        s.set(degree, c);
        s
    }

    pub fn from_coeffs<I: IntoIterator<Item = (i64, C)>>(it: I, order: i64) -> Self {
        let mut s: Self = Series::zero(order);
        for (k, c) in it {
            let cur = s.coeff(k);
            s.set(k, cur.add_ref(&c));
        }
        s
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order == EXACT
    }

    /// Sets a coefficient; degrees above the order and zero values are dropped.
    pub fn set(&mut self, k: i64, c: C) {
        if k > self.order || c.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, c);
        }
    }

    pub fn coeff(&self, k: i64) -> C {
        self.coeffs.get(&k).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeff_ref(&self, k: i64) -> Option<&C> {
        self.coeffs.get(&k)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    fn val_or_order(&self) -> i64 {
        self.valuation().unwrap_or(self.order)
    }

    pub fn truncate(&self, order: i64) -> Self {
        let order = order.min(self.order);
        Series {
            order,
            coeffs: self.coeffs.range(..=order).map(|(k, c)| (*k, c.clone())).collect(),
        }
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(i64, &C) -> D) -> Series<D> {
        Series::from_coeffs(self.iter().map(|(k, c)| (k, f(k, c))), self.order)
    }

    pub fn neg(&self) -> Self {
        self.map(|_, c| c.neg_ref())
    }

    pub fn add(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        let mut out = self.truncate(order);
        for (k, c) in o.coeffs.range(..=order) {
            let v = out.coeff(*k).add_ref(c);
            out.set(*k, v);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        self.map(|_, c| c.scale(r))
    }

    pub fn mul_coeff(&self, c: &C) -> Self {
        self.map(|_, x| x.mul_ref(c))
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        let order = if self.is_exact() {
            EXACT
        } else {
            self.order.saturating_add(k)
        };
        Series {
            order,
            coeffs: self.coeffs.iter().map(|(d, c)| (d + k, c.clone())).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let order = self
            .order
            .saturating_add(o.val_or_order())
            .min(o.order.saturating_add(self.val_or_order()));
        if self.is_zero() || o.is_zero() {
            return Series::zero(order);
        }
        let a: Vec<(i64, &C)> = self.iter().collect();
        let b: Vec<(i64, &C)> = o.iter().collect();
        let lo = a[0].0 + b[0].0;
        let hi = (a[a.len() - 1].0 + b[b.len() - 1].0).min(order);
        if hi < lo {
            return Series::zero(order);
        }
        let term = |n: i64| -> C {
            let mut acc = C::zero();
            for &(i, x) in &a {
                let j = n - i;
                if j < b[0].0 {
                    break;
                }
                if let Some(y) = o.coeffs.get(&j) {
                    acc = acc.add_ref(&x.mul_ref(y));
                }
            }
            acc
        };
        let coeffs: Vec<(i64, C)> = if a.len() * b.len() > 64 {
            (lo..=hi).into_par_iter().map(|n| (n, term(n))).collect()
        } else {
            (lo..=hi).map(|n| (n, term(n))).collect()
        };
        Series::from_coeffs(coeffs, order)
    }

    /// Multiplicative inverse; the lowest coefficient must be a unit.
    pub fn inv(&self) -> Result<Self> {
        let v = self.valuation().ok_or(Error::DivisionByZero)?;
        let lead_inv = self.coeff(v).try_inv().ok_or(Error::DivisionByZero)?;
        if self.is_exact() && self.coeffs.len() > 1 {
            return Err(Error::InvalidInput(
                "inverse of a non-monomial exact series needs a truncation order".into(),
            ));
        }
        let unit = self.shift(-v);
        let order = unit.order;
        let mut out: BTreeMap<i64, C> = BTreeMap::new();
        out.insert(0, lead_inv.clone());
        if order != EXACT {
            for n in 1..=order {
                let mut acc = C::zero();
                for (k, a) in unit.coeffs.range(1..=n) {
                    if let Some(b) = out.get(&(n - k)) {
                        acc = acc.add_ref(&a.mul_ref(b));
                    }
                }
                let c = acc.mul_ref(&lead_inv).neg_ref();
                if !c.is_zero() {
                    out.insert(n, c);
                }
            }
        }
        Ok(Series { order, coeffs: out }.shift(-v))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow_int(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Series::one(EXACT);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// `exp(a)`; `a` must have no terms of degree `<= 0`.
    pub fn exp(&self) -> Result<Self> {
        if self.valuation().is_some_and(|v| v <= 0) {
            return Err(Error::ConstantTerm {
                op: "exp",
                expected: "0 with no negative powers",
            });
        }
        if self.is_exact() && !self.is_zero() {
            return Err(Error::InvalidInput(
                "exp of an exact series needs a truncation order".into(),
            ));
        }
        let order = self.order;
        let mut e: Vec<C> = vec![C::one()];
        if order != EXACT {
            for n in 1..=order {
                let mut acc = C::zero();
                for (k, a) in self.coeffs.range(1..=n) {
                    let term = a.mul_ref(&e[(n - k) as usize]);
                    acc = acc.add_ref(&term.scale(&int(*k)));
                }
                e.push(acc.scale(&BigRational::new(BigInt::one(), BigInt::from(n))));
            }
        }
        Ok(Series::from_coeffs(
            e.into_iter().enumerate().map(|(i, c)| (i as i64, c)),
            order,
        ))
    }

    /// `log(a)`; `a` must be `1 + O(x)`.
    pub fn log(&self) -> Result<Self> {
        if self.valuation().is_some_and(|v| v < 0) || !self.coeff(0).is_one() {
            return Err(Error::ConstantTerm {
                op: "log",
                expected: "1 with no negative powers",
            });
        }
        if self.is_exact() && self.coeffs.len() > 1 {
            return Err(Error::InvalidInput(
                "log of an exact series needs a truncation order".into(),
            ));
        }
        let order = self.order;
        let mut l: Vec<C> = vec![C::zero()];
        if order != EXACT {
            for n in 1..=order {
                let mut acc = self.coeff(n).scale(&int(n));
                for k in 1..n {
                    if let Some(a) = self.coeffs.get(&(n - k)) {
                        acc = acc.sub_ref(&l[k as usize].mul_ref(a).scale(&int(k)));
                    }
                }
                l.push(acc.scale(&BigRational::new(BigInt::one(), BigInt::from(n))));
            }
        }
        Ok(Series::from_coeffs(
            l.into_iter().enumerate().map(|(i, c)| (i as i64, c)),
            order,
        ))
    }
}

impl<C: Coeff> Zero for Series<C> {
    fn zero() -> Self {
        Series::zero(EXACT)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<C: Coeff> One for Series<C> {
    fn one() -> Self {
        Series::one(EXACT)
    }
    fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeff(0).is_one()
    }
}

crate::coeff_ops!(Series<C>, C);

impl<C: Coeff> Coeff for Series<C> {
    fn add_ref(&self, o: &Self) -> Self {
        Series::add(self, o)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        Series::sub(self, o)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        Series::mul(self, o)
    }
    fn neg_ref(&self) -> Self {
        Series::neg(self)
    }
    fn scale(&self, r: &BigRational) -> Self {
        Series::scale(self, r)
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
}

impl<C: Coeff + Serialize> Serialize for Series<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Coeffs<'a, C>(&'a BTreeMap<i64, C>);
        impl<C: Serialize> Serialize for Coeffs<'_, C> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (k, v) in self.0 {
                    m.serialize_entry(&k.to_string(), v)?;
                }
                m.end()
            }
        }
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("order", &(!self.is_exact()).then_some(self.order))?;
        m.serialize_entry("coeffs", &Coeffs(&self.coeffs))?;
        m.end()
    }
}

impl QSeries {
    /// Substitutes `Q -> t^k Q`, i.e. multiplies the degree-`n` coefficient by `t^(kn)`.
    pub fn scale_variable_t(&self, k: i64) -> Self {
        self.map(|n, c| c.mul(&QRat::t_pow(k * n)))
    }
}

/// `prod (1 - q^{j+i} Q)^{e}` over the entries `(i, j) -> e`, truncated at `Q^order`.
pub fn cyclo_product(exponents: &BTreeMap<(i64, u32), i64>, order: i64) -> QSeries {
    let mut acc = QSeries::one(order);
    for (&(i, j), &e) in exponents {
        let x = QRat::q_pow(i + j as i64);
        // Generalized binomial series: coefficient of Q^k is binom(e, k) (-x)^k.
        let mut binom = BigRational::one();
        let mut factor = QSeries::one(order);
        for k in 1..=order {
            binom =
                binom * BigRational::from_integer(BigInt::from(e - k + 1)) / BigRational::from_integer(BigInt::from(k));
            if binom.is_zero() {
                break;
            }
            let sign = if k % 2 == 0 { int(1) } else { int(-1) };
            factor.set(k, x.pow(k).expect("nonzero monomial").scale(&(&binom * sign)));
        }
        acc = acc.mul(&factor);
    }
    acc
}

/// The rational function `Li_{1-n}(Q)` for `n >= 1`, in the variable of a [`QRat`] read as `Q`.
pub fn polylog_neg(n: u32) -> Result<QRat> {
    if n == 0 {
        return Err(Error::InvalidInput("polylog_neg needs n >= 1".into()));
    }
    // Li_0 = Q/(1-Q); Li_{s-1} = Q d/dQ Li_s.
    let mut li = QRat::t_pow(1).div(&QRat::laurent_i64(0, &[1, -1]))?;
    for _ in 1..n {
        li = li.euler_derivative();
    }
    Ok(li)
}

/// `sum_{k=1}^{order} Q^k / k^s`.
pub fn polylog_series(s: i64, order: i64) -> RSeries {
    Series::from_coeffs(
        (1..=order).map(|k| {
            let p = num_traits::pow::Pow::pow(BigInt::from(k), s.unsigned_abs());
            let c = if s >= 0 {
                BigRational::new(BigInt::one(), p)
            } else {
                BigRational::from_integer(p)
            };
            (k, c)
        }),
        order,
    )
}

/// Expands a rational function of one variable as a power series with rational coefficients.
pub fn expand_rational(f: &QRat, order: i64) -> RSeries {
    Series::from_coeffs(f.expand(order), order)
}

/// Lifts a rational series to Gaussian coefficients.
pub fn to_gaussian(s: &RSeries) -> GSeries {
    s.map(|_, c| GaussRat::real(c.clone()))
}
