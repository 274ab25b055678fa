//! Coefficient types usable by the series and weight machinery.
//!
//! Everything in this crate that does arithmetic is written against
//! [`Scalar`]. The engine itself runs on [`BigRational`], which keeps every
//! identity exact; the floating-point impls exist for quick numerical
//! previews and are never used on a verification path.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::Num;
#[cfg(test)]
use num_traits::One;

/// A commutative field element (or a floating-point stand-in for one).
pub trait Scalar:
    Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static
{
    /// Embeds a machine integer.
    fn from_i64(value: i64) -> Self;

    /// True when arithmetic on this type is exact.
    const EXACT: bool;

    fn from_u64(value: u64) -> Self {
        match i64::try_from(value) {
            Ok(v) => Self::from_i64(v),
            Err(_) => {
                let hi = Self::from_i64((value >> 32) as i64);
                let lo = Self::from_i64((value & 0xffff_ffff) as i64);
                hi * Self::from_i64(1 << 32) + lo
            }
        }
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_i64(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn from_u64(value: u64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }
}

impl Scalar for Rational64 {
    const EXACT: bool = true;

    fn from_i64(value: i64) -> Self {
        Rational64::from_integer(value)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(value: i64) -> Self {
        value as f64
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn from_i64(value: i64) -> Self {
        value as f32
    }
}

/// Raises `base` to a nonnegative power by repeated squaring.
pub fn pow_u32<T: Scalar>(base: &T, mut exp: u32) -> T {
    let mut acc = T::one();
    let mut sq = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * sq.clone();
        }
        exp >>= 1;
        if exp > 0 {
            sq = sq.clone() * sq;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embeds_large_unsigned() {
        let v = <Rational64 as Scalar>::from_u64(7);
        assert_eq!(v, Rational64::from_integer(7));
        let big = <BigRational as Scalar>::from_u64(u64::MAX);
        assert_eq!(big.to_integer(), BigInt::from(u64::MAX));
        let f = <f64 as Scalar>::from_u64(u64::MAX);
        assert!((f - u64::MAX as f64).abs() / f < 1e-12);
    }

    #[test]
    fn pow_by_squaring() {
        assert_eq!(
            pow_u32(&<BigRational as Scalar>::from_i64(-3), 5),
            Scalar::from_i64(-243)
        );
        assert_eq!(pow_u32(&2.0f64, 10), 1024.0);
        assert_eq!(pow_u32(&Rational64::new(1, 2), 0), Rational64::one());
    }
}
