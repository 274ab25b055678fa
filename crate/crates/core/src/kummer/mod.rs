//! Euler characteristics of generalized Kummer schemes `K_n(A x Y)`.
//!
//! With `g = dim A`, `r = dim Y` and `m = r + g`, the invariants satisfy
//!
//! ```text
//! exp( sum_n chi(K_n) / n^{2g} t^n ) = ( sum_k P_m(k) t^k )^{chi(Y)}
//! ```
//!
//! so `chi(K_n) = n^{2g} chi(Y) [t^n] log(sum_k P_m(k) t^k)`. The second
//! route goes through the punctual invariants `chi(W^n_m)`, which are
//! partition sums weighted by `e(alpha)`:
//! `chi(K_n) = n^{2g-2} chi(Y) chi(W^n_{g+r-1})`.

pub mod closed_form;
pub mod verify;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::partitions::{enumerate_partitions, PartitionError, PartitionStore};
use crate::series::SeriesError;
use crate::weights::{monomial, WeightCache};
use crate::{Rational, Scalar, TruncatedSeries};

pub use closed_form::{
    closed_form_dim3, closed_form_g1r1, closed_form_g2, divisor_sum, dt_degree_zero,
};
pub use verify::{verify_all, CheckOutcome, FaultInjection, Suite, VerifyConfig, VerifyReport};

#[derive(Debug, Error)]
pub enum KummerError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    /// An Euler characteristic came out fractional, which means a bug
    /// somewhere upstream.
    #[error("internal consistency: {quantity} at n={n} is {value}, not an integer")]
    NonInteger {
        quantity: &'static str,
        n: usize,
        value: Rational,
    },
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KummerParams {
    /// Dimension of the abelian variety, at least 1.
    pub g: u32,
    /// Dimension of `Y`.
    pub r: u32,
    /// Topological Euler characteristic of `Y`; any integer.
    pub chi_y: i64,
    /// Truncation order `N`; invariants are produced for `n = 1..=N`.
    pub order: usize,
}

impl KummerParams {
    pub fn new(g: u32, r: u32, chi_y: i64, order: usize) -> Result<Self, KummerError> {
        let p = KummerParams { g, r, chi_y, order };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), KummerError> {
        if self.g == 0 {
            return Err(KummerError::InvalidParams("g must be at least 1".into()));
        }
        if self.order == 0 {
            return Err(KummerError::InvalidParams(
                "order must be at least 1".into(),
            ));
        }
        Ok(())
    }

    /// Dimension of the partitions counted on the right-hand side.
    pub fn m(&self) -> u32 {
        self.r + self.g
    }

    /// The degenerate `g = 1, r = 0` case, where the punctual route uses
    /// `W^n_0` (one-dimensional partitions).
    pub fn is_curve_edge(&self) -> bool {
        self.g == 1 && self.r == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KummerTable {
    pub params: KummerParams,
    /// `chi(K_1), ..., chi(K_N)`.
    pub chi: Vec<BigInt>,
    /// `chi(K_n) / n^{2g}` for `n = 1..=N`.
    pub orbifold: Vec<Rational>,
}

impl KummerTable {
    /// `chi(K_n)` for `1 <= n <= N`.
    pub fn chi(&self, n: usize) -> &BigInt {
        &self.chi[n - 1]
    }

    pub fn orbifold(&self, n: usize) -> &Rational {
        &self.orbifold[n - 1]
    }
}

pub(crate) fn int_pow(base: u64, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

pub(crate) fn require_integer(
    quantity: &'static str,
    n: usize,
    value: Rational,
) -> Result<BigInt, KummerError> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(KummerError::NonInteger { quantity, n, value })
    }
}

/// `chi(K_n)` for `n = 1..=order`, from the logarithm of the partition series.
pub fn kummer_euler_table(
    params: &KummerParams,
    store: &PartitionStore,
) -> Result<KummerTable, KummerError> {
    params.validate()?;
    let pm = store.series(params.m(), params.order)?;
    kummer_table_from_series(params, &pm)
}

/// Same as [`kummer_euler_table`] but with the generating series of
/// `P_m` supplied by the caller.
pub fn kummer_table_from_series(
    params: &KummerParams,
    pm: &TruncatedSeries,
) -> Result<KummerTable, KummerError> {
    params.validate()?;
    let log = pm.truncate(params.order)?.log()?;
    let chi_y = Rational::from_i64(params.chi_y);
    let mut chi = Vec::with_capacity(params.order);
    let mut orbifold = Vec::with_capacity(params.order);
    for n in 1..=params.order {
        let orb = log.coeffs()[n].clone() * chi_y.clone();
        let value = orb.clone() * Rational::from_integer(int_pow(n as u64, 2 * params.g));
        chi.push(require_integer("chi(K_n)", n, value)?);
        orbifold.push(orb);
    }
    Ok(KummerTable {
        params: *params,
        chi,
        orbifold,
    })
}

/// The theorem read literally: raise the partition series to the power
/// `chi(Y)` first, then take the logarithm.
pub fn kummer_euler_table_via_power(
    params: &KummerParams,
    store: &PartitionStore,
) -> Result<KummerTable, KummerError> {
    params.validate()?;
    let pm = store.series(params.m(), params.order)?;
    let log = pm.int_pow(params.chi_y)?.log()?;
    let mut chi = Vec::with_capacity(params.order);
    let mut orbifold = Vec::with_capacity(params.order);
    for n in 1..=params.order {
        let orb = log.coeffs()[n].clone();
        let value = orb.clone() * Rational::from_integer(int_pow(n as u64, 2 * params.g));
        chi.push(require_integer("chi(K_n)", n, value)?);
        orbifold.push(orb);
    }
    Ok(KummerTable {
        params: *params,
        chi,
        orbifold,
    })
}

/// `chi(W^n_m)` for `n = 1..=order` via `n^2 [t^n] log(sum_k P_{m+1}(k) t^k)`.
pub fn w_euler_series(
    m: u32,
    order: usize,
    store: &PartitionStore,
) -> Result<Vec<BigInt>, KummerError> {
    let log = store.series(m + 1, order)?.log()?;
    (1..=order)
        .map(|n| {
            let value = log.coeffs()[n].clone() * Rational::from_integer(int_pow(n as u64, 2));
            require_integer("chi(W^n_m)", n, value)
        })
        .collect()
}

/// `chi(W^n_m)` as `sum_alpha e(alpha) prod_i P_{m+1}(i)^{alpha_i}`.
pub fn w_euler_partition_sum(
    m: u32,
    n: usize,
    store: &PartitionStore,
    weights: &WeightCache<Rational>,
) -> Result<Rational, KummerError> {
    if n == 0 {
        return Err(KummerError::InvalidParams("n must be at least 1".into()));
    }
    let b = store.series(m + 1, n)?;
    Ok(enumerate_partitions(n as u32)
        .iter()
        .fold(Rational::zero(), |acc, alpha| {
            acc + weights.weight(alpha) * monomial(alpha, b.coeffs())
        }))
}

/// `chi(K_n) = n^{2g-2} chi(Y) chi(W^n_{g+r-1})`, with `chi(W)` from the
/// weighted partition sum.
pub fn kummer_euler_via_w(
    params: &KummerParams,
    n: usize,
    store: &PartitionStore,
    weights: &WeightCache<Rational>,
) -> Result<Rational, KummerError> {
    params.validate()?;
    if params.chi_y == 0 {
        return Ok(Rational::zero());
    }
    let w = w_euler_partition_sum(params.m() - 1, n, store, weights)?;
    let scale = int_pow(n as u64, 2 * params.g - 2) * BigInt::from(params.chi_y);
    Ok(w * Rational::from_integer(scale))
}

/// `chi(K_n) / n^{2g}`, the Euler characteristic of the quotient stack.
pub fn orbifold_euler(
    params: &KummerParams,
    n: usize,
    store: &PartitionStore,
) -> Result<Rational, KummerError> {
    params.validate()?;
    if n == 0 {
        return Err(KummerError::InvalidParams("n must be at least 1".into()));
    }
    let log = store.series(params.m(), n)?.log()?;
    Ok(log.coeffs()[n].clone() * Rational::from_i64(params.chi_y))
}

/// `exp(sum_n chi_n / n^{2g} t^n)` truncated at the length of `chi`.
pub fn exp_of_normalized(chi: &[BigInt], g: u32) -> TruncatedSeries {
    let order = chi.len();
    let exponent = TruncatedSeries::from_fn(order, |n| {
        if n == 0 {
            Rational::zero()
        } else {
            Rational::new(chi[n - 1].clone(), int_pow(n as u64, 2 * g))
        }
    });
    exponent.exp().expect("zero constant term")
}
