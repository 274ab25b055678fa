//! Truncated formal power series in one variable `t`.
//!
//! A [`Series`] is known exactly through a declared order `N`: it stores the
//! coefficients of `t^0 ..= t^N` and nothing else. Binary operations insist
//! on equal orders; nothing ever silently widens or narrows a series.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("coefficient index {index} is beyond the series order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("series has zero constant term and cannot be inverted")]
    ZeroConstantTerm,
    #[error("formal exp needs a zero constant term")]
    NonZeroConstantTerm,
    #[error("formal log needs constant term 1")]
    ConstantTermNotOne,
}

/// Power series truncated after `t^order`.
#[derive(Clone, PartialEq)]
pub struct Series<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Series<T> {
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![T::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(T::one(), 0, order)
    }

    /// `c * t^power`, or zero if `power > order`.
    pub fn monomial(c: T, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    /// Builds a series from explicit coefficients; the order is `len - 1`.
    ///
    /// Panics on an empty vector, which would describe no order at all.
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least a constant term"
        );
        Series { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> T) -> Self {
        Series {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    /// `1 + t + t^2 + ... + t^order`.
    pub fn geometric(order: usize) -> Self {
        Series {
            coeffs: vec![T::one(); order + 1],
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Result<&T, SeriesError> {
        self.coeffs.get(n).ok_or(SeriesError::IndexOutOfRange {
            index: n,
            order: self.order(),
        })
    }

    /// Drops every coefficient above `order`. Raising the order is refused
    /// since the missing coefficients are unknown.
    pub fn truncate(&self, order: usize) -> Result<Self, SeriesError> {
        if order > self.order() {
            return Err(SeriesError::IndexOutOfRange {
                index: order,
                order: self.order(),
            });
        }
        Ok(Series {
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    fn check_orders(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_orders(other)?;
        Ok(Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_orders(other)?;
        Ok(Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        })
    }

    pub fn scale(&self, c: &T) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// Cauchy product truncated to the common order.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_orders(other)?;
        let order = self.order();
        let mut out = Self::zero(order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] = out.coeffs[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse, solved coefficient by coefficient.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let inv0 = T::one() / c0.clone();
        let mut out = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..=self.order() {
            let mut acc = T::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc = acc + self.coeffs[k].clone() * out[n - k].clone();
                }
            }
            out.push(-(acc * inv0.clone()));
        }
        Ok(Series { coeffs: out })
    }

    /// Formal derivative `t * d/dt`, which keeps the order unchanged.
    pub fn euler_derivative(&self) -> Self {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c.clone() * T::from_u64(k as u64))
                .collect(),
        }
    }

    /// Formal exponential of a series without constant term.
    ///
    /// With `g = exp(f)` we have `t g' = (t f') g`, so
    /// `n g_n = sum_{k=1..n} k f_k g_{n-k}`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonZeroConstantTerm);
        }
        let weighted = self.euler_derivative();
        let mut out = Vec::with_capacity(self.coeffs.len());
        out.push(T::one());
        for n in 1..=self.order() {
            let mut acc = T::zero();
            for k in 1..=n {
                if !weighted.coeffs[k].is_zero() {
                    acc = acc + weighted.coeffs[k].clone() * out[n - k].clone();
                }
            }
            out.push(acc / T::from_u64(n as u64));
        }
        Ok(Series { coeffs: out })
    }

    /// Formal logarithm of a series with constant term 1; the same
    /// recurrence as [`Series::exp`] solved for `f`.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::ConstantTermNotOne);
        }
        let g = &self.coeffs;
        // weighted[k] = k f_k
        let mut weighted: Vec<T> = Vec::with_capacity(g.len());
        weighted.push(T::zero());
        for n in 1..=self.order() {
            let mut acc = g[n].clone() * T::from_u64(n as u64);
            for k in 1..n {
                if !g[n - k].is_zero() {
                    acc = acc - weighted[k].clone() * g[n - k].clone();
                }
            }
            weighted.push(acc);
        }
        let coeffs = weighted
            .into_iter()
            .enumerate()
            .map(|(k, c)| if k == 0 { c } else { c / T::from_u64(k as u64) })
            .collect();
        Ok(Series { coeffs })
    }

    /// `self^e` for any integer `e`; negative powers go through the inverse.
    pub fn int_pow(&self, e: i64) -> Result<Self, SeriesError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = Self::one(self.order());
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            exp >>= 1;
            if exp > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// `prod_{k=1..order} (1 - t^k)^{-e_k}` truncated at `order`. Keys
    /// absent from `exponents` (and keys above `order`) contribute nothing.
    pub fn product_form(exponents: &BTreeMap<usize, i64>, order: usize) -> Self {
        Self::product_form_with(order, |k| exponents.get(&k).copied().unwrap_or(0))
    }

    /// [`Series::product_form`] with exponents given by a function of `k`.
    pub fn product_form_with(order: usize, mut exponent: impl FnMut(usize) -> i64) -> Self {
        let mut c = Self::one(order).coeffs;
        for k in 1..=order {
            let e = exponent(k);
            for _ in 0..e.unsigned_abs() {
                if e > 0 {
                    // divide by (1 - t^k)
                    for n in k..=order {
                        let prev = c[n - k].clone();
                        c[n] = c[n].clone() + prev;
                    }
                } else {
                    // multiply by (1 - t^k)
                    for n in (k..=order).rev() {
                        let prev = c[n - k].clone();
                        c[n] = c[n].clone() - prev;
                    }
                }
            }
        }
        Series { coeffs: c }
    }

    /// Coefficientwise map, e.g. to change the coefficient type.
    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Series<U> {
        Series {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl<T: fmt::Debug> fmt::Debug for Series<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series(")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c:?}*t^{k}")?;
        }
        write!(f, " + O(t^{}))", self.coeffs.len())
    }
}
