//! Exact Euler characteristics of generalized Kummer schemes `K_n(A x Y)`.
//!
//! The engine takes the dimension `g` of the abelian variety, the dimension
//! `r` of `Y` and the integer `chi(Y)`, and produces `chi(K_n)` through
//! several independent routes that are checked against each other:
//!
//! * the logarithm of the generating series of `(r+g)`-dimensional
//!   partitions ([`kummer::kummer_euler_table`]),
//! * partition-indexed sums weighted by the recursive weights `e(alpha)`
//!   ([`weights`], [`kummer::kummer_euler_via_w`]),
//! * closed divisor-sum formulas in the low-dimensional cases
//!   ([`kummer::closed_form`]),
//! * brute-force enumeration of order ideals in `N^m`
//!   ([`partitions::order_ideal`]).
//!
//! Series and weights are generic over [`Scalar`]; the engine runs on
//! [`Rational`] and the aliases below name the concrete instantiation.

pub mod cli;
pub mod kummer;
pub mod partitions;
pub mod scalar;
pub mod series;
pub mod weights;

pub use num_bigint::{BigInt, BigUint};
pub use scalar::Scalar;
pub use series::{Series, SeriesError};

/// Exact arbitrary-precision rational; the coefficient field of the engine.
pub type Rational = num_rational::BigRational;

/// Exact truncated power series.
pub type TruncatedSeries = Series<Rational>;

/// Floating-point series for numerical previews.
pub type FloatSeries = Series<f64>;

/// `e(alpha)` memo table over exact rationals.
pub type RationalWeightCache = weights::WeightCache<Rational>;
