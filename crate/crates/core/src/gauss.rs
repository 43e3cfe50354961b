//! Gaussian rationals `x + y i`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::coeff::Coeff;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussRat {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn i() -> Self {
        GaussRat {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        let one = BigRational::from_integer(1.into());
        let zero = BigRational::zero();
        match k.rem_euclid(4) {
            0 => GaussRat::new(one, zero),
            1 => GaussRat::new(zero, one),
            2 => GaussRat::new(-one, zero),
            _ => GaussRat::new(zero, -one),
        }
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -&self.im)
    }
}

impl Zero for GaussRat {
    fn zero() -> Self {
        GaussRat::real(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRat {
    fn one() -> Self {
        GaussRat::real(BigRational::one())
    }
}

crate::coeff_ops!(GaussRat);

impl Coeff for GaussRat {
    fn add_ref(&self, o: &Self) -> Self {
        GaussRat::new(&self.re + &o.re, &self.im + &o.im)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        GaussRat::new(&self.re - &o.re, &self.im - &o.im)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussRat::real(&self.re * &o.re);
        }
        GaussRat::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }
    fn neg_ref(&self) -> Self {
        GaussRat::new(-&self.re, -&self.im)
    }
    fn scale(&self, r: &BigRational) -> Self {
        GaussRat::new(&self.re * r, &self.im * r)
    }
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(GaussRat::new(&self.re / &norm, -&self.im / &norm))
    }
    fn from_rational(r: &BigRational) -> Self {
        GaussRat::real(r.clone())
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "{} {} {}i", self.re, sign, self.im.abs())
            }
        }
    }
}
