//! The field Q(t) of rational functions in the half variable `t`, with `q = t^2`.
//!
//! A [`QRat`] is kept in canonical form: `t^off * num(t) / den(t)` with
//! `num(0) != 0`, `den(0) > 0`, `gcd(num, den) = 1` over Q, and no common
//! integer content. Structural equality is therefore equality of functions.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::poly::{self, Poly};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRat {
    off: i64,
    num: Poly,
    den: Poly,
}

impl QRat {
    pub fn zero() -> Self {
        QRat {
            off: 0,
            num: Vec::new(),
            den: vec![BigInt::one()],
        }
    }

    pub fn one() -> Self {
        QRat::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        QRat::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        if n.is_zero() {
            return QRat::zero();
        }
        QRat {
            off: 0,
            num: vec![n],
            den: vec![BigInt::one()],
        }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        if r.is_zero() {
            return QRat::zero();
        }
        // BigRational keeps a positive denominator in lowest terms.
        QRat {
            off: 0,
            num: vec![r.numer().clone()],
            den: vec![r.denom().clone()],
        }
    }

    /// `t^k`, i.e. `q^(k/2)`.
    pub fn t_pow(k: i64) -> Self {
        QRat {
            off: k,
            num: vec![BigInt::one()],
            den: vec![BigInt::one()],
        }
    }

    /// `t^k_half`, i.e. `q^(k_half/2)`.
    pub fn q_monomial(k_half: i64) -> Self {
        QRat::t_pow(k_half)
    }

    /// `q^k = t^(2k)`.
    pub fn q_pow(k: i64) -> Self {
        QRat::t_pow(2 * k)
    }

    /// `1 - q^k` for `k >= 1`.
    pub fn one_minus_q_pow(k: u32) -> Self {
        let mut c = vec![BigInt::zero(); 2 * k as usize + 1];
        c[0] = BigInt::one();
        c[2 * k as usize] = -BigInt::one();
        QRat::laurent(0, c)
    }

    /// The Laurent polynomial `t^off * sum coeffs[i] t^i`.
    pub fn laurent(off: i64, coeffs: Poly) -> Self {
        QRat::finish(off, poly::trimmed(coeffs), vec![BigInt::one()])
    }

    pub fn laurent_i64(off: i64, coeffs: &[i64]) -> Self {
        QRat::laurent(off, poly::from_i64(coeffs))
    }

    /// `t^num_off num / (t^den_off den)` brought to canonical form.
    pub fn from_parts(num_off: i64, num: Poly, den_off: i64, den: Poly) -> Result<Self> {
        let den = poly::trimmed(den);
        if den.is_empty() {
            return Err(Error::DivisionByZero);
        }
        Ok(QRat::canonical(num_off - den_off, poly::trimmed(num), den))
    }

    pub fn offset(&self) -> i64 {
        self.off
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &[BigInt] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_laurent_polynomial(&self) -> bool {
        self.den.len() == 1 && self.den[0].is_one()
    }

    fn strip_low(off: &mut i64, p: &mut Poly) {
        let k = p.iter().take_while(|c| c.is_zero()).count();
        if k > 0 {
            p.drain(..k);
            *off += k as i64;
        }
    }

    /// Normalises t-powers, integer content and sign. Assumes `num`, `den` coprime over Q.
    fn finish(mut off: i64, mut num: Poly, mut den: Poly) -> Self {
        if num.is_empty() {
            return QRat::zero();
        }
        QRat::strip_low(&mut off, &mut num);
        let mut doff = 0;
        QRat::strip_low(&mut doff, &mut den);
        off -= doff;
        let c = poly::content(&num).gcd(&poly::content(&den));
        if !c.is_one() {
            num = poly::div_scalar(&num, &c);
            den = poly::div_scalar(&den, &c);
        }
        if den[0].is_negative() {
            num = poly::neg(&num);
            den = poly::neg(&den);
        }
        QRat { off, num, den }
    }

    fn canonical(off: i64, num: Poly, den: Poly) -> Self {
        if num.is_empty() {
            return QRat::zero();
        }
        if den.len() == 1 {
            return QRat::finish(off, num, den);
        }
        let g = poly::gcd(&num, &den);
        if g.len() > 1 {
            let n = poly::div_exact(&num, &g).expect("gcd divides numerator");
            let d = poly::div_exact(&den, &g).expect("gcd divides denominator");
            return QRat::finish(off, n, d);
        }
        QRat::finish(off, num, den)
    }

    pub fn neg(&self) -> Self {
        QRat {
            off: self.off,
            num: poly::neg(&self.num),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let base = self.off.min(o.off);
        let a = poly::shift(&self.num, (self.off - base) as usize);
        let b = poly::shift(&o.num, (o.off - base) as usize);
        if self.den == o.den {
            let n = poly::add(&a, &b);
            return QRat::canonical(base, n, self.den.clone());
        }
        let g = poly::gcd(&self.den, &o.den);
        if g.len() == 1 {
            let n = poly::add(&poly::mul(&a, &o.den), &poly::mul(&b, &self.den));
            let d = poly::mul(&self.den, &o.den);
            return QRat::finish(base, n, d);
        }
        let da = poly::div_exact(&self.den, &g).expect("gcd divides");
        let db = poly::div_exact(&o.den, &g).expect("gcd divides");
        let mut n = poly::add(&poly::mul(&a, &db), &poly::mul(&b, &da));
        let mut d = poly::mul(&da, &o.den);
        if n.is_empty() {
            return QRat::zero();
        }
        let g2 = poly::gcd(&n, &g);
        if g2.len() > 1 {
            n = poly::div_exact(&n, &g2).expect("gcd divides");
            d = poly::div_exact(&d, &g2).expect("gcd divides");
        }
        QRat::finish(base, n, d)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return QRat::zero();
        }
        let off = self.off + o.off;
        if self.is_laurent_polynomial() && o.is_laurent_polynomial() {
            return QRat::finish(off, poly::mul(&self.num, &o.num), vec![BigInt::one()]);
        }
        let (mut a, mut db) = (self.num.clone(), o.den.clone());
        if db.len() > 1 && a.len() > 1 {
            let g = poly::gcd(&a, &db);
            if g.len() > 1 {
                a = poly::div_exact(&a, &g).expect("gcd divides");
                db = poly::div_exact(&db, &g).expect("gcd divides");
            }
        }
        let (mut b, mut da) = (o.num.clone(), self.den.clone());
        if da.len() > 1 && b.len() > 1 {
            let g = poly::gcd(&b, &da);
            if g.len() > 1 {
                b = poly::div_exact(&b, &g).expect("gcd divides");
                da = poly::div_exact(&da, &g).expect("gcd divides");
            }
        }
        QRat::finish(off, poly::mul(&a, &b), poly::mul(&da, &db))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QRat::finish(-self.off, self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = QRat::one();
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

    pub fn scale(&self, r: &BigRational) -> Self {
        if self.is_zero() || r.is_zero() {
            return QRat::zero();
        }
        QRat::finish(
            self.off,
            poly::scale(&self.num, r.numer()),
            poly::scale(&self.den, r.denom()),
        )
    }

    /// `a(1/t)`. Realises `q -> 1/q`.
    pub fn invert_t(&self) -> Self {
        if self.is_zero() {
            return QRat::zero();
        }
        let dn = poly::degree(&self.num) as i64;
        let dd = poly::degree(&self.den) as i64;
        let mut num = self.num.clone();
        num.reverse();
        let mut den = self.den.clone();
        den.reverse();
        QRat::finish(-self.off - dn + dd, num, den)
    }

    /// True iff the function lies in Q(q), i.e. only even powers of `t` occur.
    pub fn has_even_t_powers(&self) -> bool {
        let odd_free = |p: &Poly| p.iter().skip(1).step_by(2).all(|c| c.is_zero());
        self.off % 2 == 0 && odd_free(&self.num) && odd_free(&self.den)
    }

    /// True iff the Laurent expansion in `t` has integer coefficients.
    pub fn has_integral_expansion(&self) -> bool {
        self.is_zero() || self.den[0].is_one()
    }

    pub fn eval_at(&self, t0: &BigRational) -> Result<BigRational> {
        let horner = |p: &Poly| {
            let mut acc = BigRational::zero();
            for c in p.iter().rev() {
                acc = acc * t0 + BigRational::from_integer(c.clone());
            }
            acc
        };
        let d = horner(&self.den);
        if d.is_zero() {
            return Err(Error::Pole(t0.to_string()));
        }
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        if t0.is_zero() {
            if self.off < 0 {
                return Err(Error::Pole(t0.to_string()));
            }
            if self.off > 0 {
                return Ok(BigRational::zero());
            }
        }
        let tp = num_traits::pow::Pow::pow(t0, self.off as i32);
        Ok(tp * horner(&self.num) / d)
    }

    /// Laurent expansion around `t = 0`, coefficients of `t^k` for `k <= t_order`.
    pub fn expand(&self, t_order: i64) -> BTreeMap<i64, BigRational> {
        let mut out = BTreeMap::new();
        if self.is_zero() || t_order < self.off {
            return out;
        }
        let n = (t_order - self.off) as usize + 1;
        let d0 = BigRational::from_integer(self.den[0].clone());
        let mut c: Vec<BigRational> = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = BigRational::from_integer(self.num.get(i).cloned().unwrap_or_default());
            for k in 1..=i.min(self.den.len() - 1) {
                if !self.den[k].is_zero() {
                    acc -= &c[i - k] * BigRational::from_integer(self.den[k].clone());
                }
            }
            c.push(acc / &d0);
        }
        for (i, v) in c.into_iter().enumerate() {
            if !v.is_zero() {
                out.insert(self.off + i as i64, v);
            }
        }
        out
    }

    /// `t d/dt` applied to the function.
    pub fn euler_derivative(&self) -> Self {
        if self.is_zero() {
            return QRat::zero();
        }
        let tderiv = |p: &Poly| -> Poly { p.iter().enumerate().map(|(i, c)| c * BigInt::from(i as i64)).collect() };
        // t d/dt (t^o A / D) = t^o ((o A + t A') D - A t D') / D^2
        let oa: Poly = poly::scale(&self.num, &BigInt::from(self.off));
        let left = poly::mul(&poly::add(&oa, &tderiv(&self.num)), &self.den);
        let right = poly::mul(&self.num, &tderiv(&self.den));
        let n = poly::sub(&left, &right);
        let d = poly::mul(&self.den, &self.den);
        QRat::canonical(self.off, n, d)
    }

    /// Substitutes `t -> t^k` for `k >= 1`.
    pub fn subs_t_power(&self, k: u32) -> Self {
        let spread = |p: &Poly| -> Poly {
            let mut out = vec![BigInt::zero(); (p.len().max(1) - 1) * k as usize + 1];
            for (i, c) in p.iter().enumerate() {
                out[i * k as usize] = c.clone();
            }
            poly::trimmed(out)
        };
        if self.is_zero() {
            return QRat::zero();
        }
        QRat::finish(self.off * k as i64, spread(&self.num), spread(&self.den))
    }
}

impl Default for QRat {
    fn default() -> Self {
        QRat::zero()
    }
}

impl num_traits::Zero for QRat {
    fn zero() -> Self {
        QRat::zero()
    }
    fn is_zero(&self) -> bool {
        QRat::is_zero(self)
    }
}

impl num_traits::One for QRat {
    fn one() -> Self {
        QRat::one()
    }
}

crate::coeff_ops!(QRat);

impl Coeff for QRat {
    fn add_ref(&self, o: &Self) -> Self {
        QRat::add(self, o)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        QRat::sub(self, o)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        QRat::mul(self, o)
    }
    fn neg_ref(&self) -> Self {
        QRat::neg(self)
    }
    fn scale(&self, r: &BigRational) -> Self {
        QRat::scale(self, r)
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn from_rational(r: &BigRational) -> Self {
        QRat::from_rational(r)
    }
}

fn fmt_poly(f: &mut fmt::Formatter<'_>, off: i64, p: &Poly) -> fmt::Result {
    if p.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = off + i as i64;
        let mag = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
        }
        first = false;
        match (mag.is_one(), e) {
            (_, 0) => write!(f, "{mag}")?,
            (true, 1) => write!(f, "t")?,
            (true, _) => write!(f, "t^{e}")?,
            (false, 1) => write!(f, "{mag}*t")?,
            (false, _) => write!(f, "{mag}*t^{e}")?,
        }
    }
    Ok(())
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_laurent_polynomial() {
            return fmt_poly(f, self.off, &self.num);
        }
        write!(f, "(")?;
        fmt_poly(f, self.off, &self.num)?;
        write!(f, ")/(")?;
        fmt_poly(f, 0, &self.den)?;
        write!(f, ")")
    }
}

impl fmt::Debug for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRat[{self}]")
    }
}

#[derive(Serialize, Deserialize)]
struct WirePoly {
    off: i64,
    coeffs: Vec<serde_json::Number>,
}

#[derive(Serialize, Deserialize)]
struct WireRat {
    num: WirePoly,
    den: WirePoly,
}

pub(crate) fn big_to_number(c: &BigInt) -> serde_json::Number {
    serde_json::Number::from_string_unchecked(c.to_string())
}

pub(crate) fn serialize_bigint<S: Serializer>(c: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    big_to_number(c).serialize(s)
}

pub(crate) fn number_to_big(n: &serde_json::Number) -> Option<BigInt> {
    n.as_str().parse().ok()
}

impl Serialize for QRat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let w = WireRat {
            num: WirePoly {
                off: self.off,
                coeffs: self.num.iter().map(big_to_number).collect(),
            },
            den: WirePoly {
                off: 0,
                coeffs: self.den.iter().map(big_to_number).collect(),
            },
        };
        w.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = WireRat::deserialize(d)?;
        let conv = |v: &[serde_json::Number]| -> std::result::Result<Poly, D::Error> {
            v.iter()
                .map(|n| number_to_big(n).ok_or_else(|| D::Error::custom(format!("bad integer {n}"))))
                .collect()
        };
        QRat::from_parts(w.num.off, conv(&w.num.coeffs)?, w.den.off, conv(&w.den.coeffs)?).map_err(D::Error::custom)
    }
}
