//! Recursive partition weights `e(alpha)` and the two equivalent ways of
//! turning a sequence `b_0 = 1, b_1, b_2, ...` into `a_1, a_2, ...`:
//!
//! * as a weighted sum over partitions,
//!   `a_n = sum_alpha e(alpha) * prod_i b_i^{alpha_i}`;
//! * through the series identity `exp(sum_n a_n / n^2 t^n) = sum_k b_k t^k`.
//!
//! The weights are defined by `e((n^1)) = n^2` and, for every other
//! partition `alpha` of `n`,
//! `e(alpha) = -sum_i n / (n - i) * e(alpha minus one part of size i)`,
//! where `i` runs over the distinct part sizes occurring in `alpha`.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::partitions::{enumerate_partitions, PartitionMult};
use crate::scalar::{pow_u32, Scalar};
use crate::series::{Series, SeriesError};

/// Memo table for `e(alpha)`, shareable between threads.
///
/// Concurrent callers may both miss and compute the same entry; the
/// recursion is pure, so whichever insert lands last stores the same value.
pub struct WeightCache<T> {
    base: fn(u32) -> T,
    map: RwLock<HashMap<PartitionMult, T>>,
}

impl<T: Scalar> Default for WeightCache<T> {
    fn default() -> Self {
        Self::new()
    }
}

fn n_squared<T: Scalar>(n: u32) -> T {
    T::from_u64(n as u64 * n as u64)
}

impl<T: Scalar> WeightCache<T> {
    pub fn new() -> Self {
        Self::with_base_case(n_squared::<T>)
    }

    /// A cache whose recursion starts from `base(n)` for `(n^1)` instead of
    /// `n^2`. Only meaningful for fault-injection checks.
    pub fn with_base_case(base: fn(u32) -> T) -> Self {
        WeightCache {
            base,
            map: RwLock::new(HashMap::new()),
        }
    }

    pub fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, alpha: &PartitionMult) -> Option<T> {
        self.map.read().unwrap().get(alpha).cloned()
    }

    /// `e(alpha)`, memoized.
    pub fn weight(&self, alpha: &PartitionMult) -> T {
        if let Some(v) = self.get(alpha) {
            return v;
        }
        let v = if alpha.is_single() {
            (self.base)(alpha.n())
        } else {
            recursion_step(alpha, |beta| self.weight(beta))
        };
        self.map.write().unwrap().insert(alpha.clone(), v.clone());
        v
    }

    /// Re-runs the recursion one step for every cached entry and reports the
    /// first partition whose stored value disagrees.
    pub fn audit(&self) -> Option<PartitionMult> {
        let snapshot: Vec<(PartitionMult, T)> = self
            .map
            .read()
            .unwrap()
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        snapshot.into_iter().find_map(|(alpha, v)| {
            let again = if alpha.is_single() {
                (self.base)(alpha.n())
            } else {
                recursion_step(&alpha, |b| self.weight(b))
            };
            (again != v).then_some(alpha)
        })
    }
}

fn recursion_step<T: Scalar>(
    alpha: &PartitionMult,
    mut lower: impl FnMut(&PartitionMult) -> T,
) -> T {
    let n = alpha.n() as u64;
    let mut acc = T::zero();
    for i in alpha.part_sizes() {
        let beta = alpha
            .remove_part(i)
            .expect("non-single partition has a proper part");
        let ratio = T::from_u64(n) / T::from_u64(n - i as u64);
        acc = acc + ratio * lower(&beta);
    }
    -acc
}

/// `e(alpha)` using the given cache.
pub fn e_weight<T: Scalar>(alpha: &PartitionMult, cache: &WeightCache<T>) -> T {
    cache.weight(alpha)
}

/// `e(alpha)` by plain recursion, without memoization.
pub fn e_weight_uncached<T: Scalar>(alpha: &PartitionMult) -> T {
    if alpha.is_single() {
        return n_squared(alpha.n());
    }
    recursion_step(alpha, e_weight_uncached::<T>)
}

/// `prod_i b_i^{alpha_i}`.
pub fn monomial<T: Scalar>(alpha: &PartitionMult, b: &[T]) -> T {
    alpha.part_sizes().fold(T::one(), |acc, i| {
        acc * pow_u32(&b[i as usize], alpha.multiplicity(i))
    })
}

/// `sum_alpha e(alpha) prod_i b_i^{alpha_i}` over the partitions of `n`.
///
/// `b` is indexed from `b_0`; it must reach at least index `n`.
pub fn a_from_b_partition_sum<T: Scalar>(b: &[T], n: u32, cache: &WeightCache<T>) -> T {
    assert!(b.len() > n as usize, "b must be defined through index {n}");
    enumerate_partitions(n)
        .iter()
        .fold(T::zero(), |acc, alpha| {
            acc + cache.weight(alpha) * monomial(alpha, b)
        })
}

/// `a_1..=a_order` with `a_n = n^2 [t^n] log(sum_k b_k t^k)`.
///
/// Index 0 of the returned vector is `a_1`.
pub fn a_from_b_series<T: Scalar>(b: &[T], order: usize) -> Result<Vec<T>, SeriesError> {
    let series = Series::from_coeffs(b[..=order].to_vec());
    let log = series.log()?;
    Ok((1..=order)
        .map(|n| log.coeffs()[n].clone() * n_squared(n as u32))
        .collect())
}

/// `b_0..=b_order` with `sum_k b_k t^k = exp(sum_n a_n / n^2 t^n)`.
///
/// `a[0]` holds `a_1`.
pub fn b_from_a<T: Scalar>(a: &[T], order: usize) -> Vec<T> {
    assert!(a.len() >= order, "a must be defined through index {order}");
    let exponent = Series::from_fn(order, |n| {
        if n == 0 {
            T::zero()
        } else {
            a[n - 1].clone() / n_squared(n as u32)
        }
    });
    exponent.exp().expect("constant term is zero").into_coeffs()
}

/// The pair of sequences related by the identity above, with `b_0 = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SequencePair<T> {
    /// `a_1..=a_N`, stored from index 0.
    pub a: Vec<T>,
    /// `b_0..=b_N`.
    pub b: Vec<T>,
}

impl<T: Scalar> SequencePair<T> {
    pub fn from_b(b: Vec<T>) -> Result<Self, SeriesError> {
        let order = b.len() - 1;
        let a = a_from_b_series(&b, order)?;
        Ok(SequencePair { a, b })
    }

    pub fn from_a(a: Vec<T>) -> Self {
        let order = a.len();
        let b = b_from_a(&a, order);
        SequencePair { a, b }
    }
}
