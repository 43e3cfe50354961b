//! The coefficient interface shared by every truncated series ring.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact commutative ring with a Q-algebra structure.
///
/// `zero`, `one`, `is_zero` come from `num_traits`; the by-reference
/// operations below avoid cloning large coefficients.
pub trait Coeff: Clone + PartialEq + Debug + Send + Sync + Zero + One {
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn scale(&self, r: &BigRational) -> Self;
    /// Multiplicative inverse when it exists in the ring.
    fn try_inv(&self) -> Option<Self>;

    fn from_rational(r: &BigRational) -> Self {
        Self::one().scale(r)
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }
}

impl Coeff for BigRational {
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, r: &BigRational) -> Self {
        self * r
    }
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
}

/// Implements the `std::ops` and `num_traits` plumbing for a [`Coeff`]
/// type in terms of its by-reference methods.
#[macro_export]
macro_rules! coeff_ops {
    ($t:ty $(, $g:ident)?) => {
        impl$(<$g: $crate::coeff::Coeff>)? std::ops::Add for $t {
            type Output = Self;
            fn add(self, o: Self) -> Self {
                $crate::coeff::Coeff::add_ref(&self, &o)
            }
        }
        impl$(<$g: $crate::coeff::Coeff>)? std::ops::Mul for $t {
            type Output = Self;
            fn mul(self, o: Self) -> Self {
                $crate::coeff::Coeff::mul_ref(&self, &o)
            }
        }
    };
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
