//! Exact scalar fields the series and polynomial code is generic over.

use std::fmt::{Debug, Display};
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, One, ToPrimitive};

/// An exact field element.
///
/// Implemented for [`BigRational`] and for fixed-width rationals. The
/// fixed-width impls panic on overflow instead of wrapping.
pub trait Scalar:
    Clone + Debug + Display + FromStr + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static
{
    fn from_i128(v: i128) -> Self;

    fn from_bigint(v: &BigInt) -> Self;

    /// `Some(n)` when the value is an integer.
    fn to_bigint(&self) -> Option<BigInt>;

    fn is_integer(&self) -> bool {
        self.to_bigint().is_some()
    }
}

impl Scalar for BigRational {
    fn from_i128(v: i128) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }

    fn to_bigint(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.numer().clone())
    }

    fn is_integer(&self) -> bool {
        self.denom().is_one()
    }
}

macro_rules! fixed_ratio_scalar {
    ($t:ty) => {
        impl Scalar for Ratio<$t> {
            fn from_i128(v: i128) -> Self {
                let v = <$t>::try_from(v).expect("integer does not fit the scalar width");
                Ratio::from_integer(v)
            }

            fn from_bigint(v: &BigInt) -> Self {
                let v = v
                    .to_i128()
                    .and_then(|x| <$t>::try_from(x).ok())
                    .expect("integer does not fit the scalar width");
                Ratio::from_integer(v)
            }

            fn to_bigint(&self) -> Option<BigInt> {
                self.denom().is_one().then(|| BigInt::from(*self.numer()))
            }
        }
    };
}

fixed_ratio_scalar!(i64);
fixed_ratio_scalar!(i128);

pub(crate) fn int<T: Scalar>(v: i64) -> T {
    T::from_i128(v as i128)
}

/// Parses the canonical `"num"` / `"num/den"` encoding.
pub(crate) fn parse_rational<T: Scalar>(s: &str) -> Option<T> {
    let s = s.trim();
    let v: T = s.parse().ok()?;
    Some(v)
}
