//! Ordinary partitions (the index set of every stratified sum) and counts
//! `P_m(k)` of `m`-dimensional partitions, i.e. order ideals of size `k` in
//! `N^m`.
//!
//! `P_1`, `P_2` and `P_3` come from product formulas; `P_m` for `m >= 4` has
//! no product formula and is counted by brute force, optionally persisted in
//! an on-disk cache.

pub mod cache;
pub mod order_ideal;

use std::collections::HashMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::{Rational, Series, TruncatedSeries};

pub use cache::{cache_load, cache_path, cache_store};
pub use order_ideal::{
    count_order_ideals, count_order_ideals_table, enumerate_order_ideals, OrderIdeal, OrderIdeals,
    Strategy,
};

#[derive(Debug, Error)]
pub enum PartitionError {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cache file {path} failed validation: {reason}")]
    Integrity { path: PathBuf, reason: String },
    #[error("cache file holds dimension {found}, expected {requested}")]
    DimensionMismatch { requested: u32, found: u32 },
    #[error("brute-force budget of {budget} nodes exhausted for m={m}{}",
        completed_through.map(|k| format!(" (counts complete through k={k})")).unwrap_or_default())]
    ResourceLimit {
        m: u32,
        completed_through: Option<usize>,
        budget: u64,
    },
    #[error("bounding box [0,{k})^{m} does not fit the point encoding")]
    BoxTooLarge { m: u32, k: usize },
    #[error("partition dimension must be at least 1")]
    ZeroDimension,
}

/// A partition of `n` by multiplicities: `mult[i - 1]` copies of part `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionMult {
    mult: Vec<u32>,
}

impl PartitionMult {
    /// From a multiplicity vector whose length is the partitioned integer.
    pub fn from_mult(mult: Vec<u32>) -> Option<Self> {
        let n = mult.len() as u64;
        let total: u64 = mult
            .iter()
            .enumerate()
            .map(|(i, &a)| (i as u64 + 1) * a as u64)
            .sum();
        (n >= 1 && total == n).then_some(PartitionMult { mult })
    }

    pub fn from_parts(parts: &[u32]) -> Option<Self> {
        let n: u32 = parts.iter().sum();
        if n == 0 || parts.contains(&0) {
            return None;
        }
        let mut mult = vec![0; n as usize];
        for &p in parts {
            mult[p as usize - 1] += 1;
        }
        Some(PartitionMult { mult })
    }

    /// The single-part partition `(n^1)`.
    pub fn single(n: u32) -> Self {
        let mut mult = vec![0; n as usize];
        mult[n as usize - 1] = 1;
        PartitionMult { mult }
    }

    pub fn n(&self) -> u32 {
        self.mult.len() as u32
    }

    pub fn mult(&self) -> &[u32] {
        &self.mult
    }

    /// Multiplicity of part size `i` (1-based).
    pub fn multiplicity(&self, i: u32) -> u32 {
        self.mult.get(i as usize - 1).copied().unwrap_or(0)
    }

    pub fn is_single(&self) -> bool {
        self.mult.last() == Some(&1)
    }

    /// Distinct part sizes, ascending.
    pub fn part_sizes(&self) -> impl Iterator<Item = u32> + '_ {
        self.mult
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, _)| i as u32 + 1)
    }

    /// Parts in decreasing order.
    pub fn parts(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (i, &a) in self.mult.iter().enumerate().rev() {
            out.extend(std::iter::repeat_n(i as u32 + 1, a as usize));
        }
        out
    }

    /// Removes one part of size `i`, giving a partition of `n - i`. `None`
    /// when `i` does not occur or when nothing would be left.
    pub fn remove_part(&self, i: u32) -> Option<Self> {
        if self.multiplicity(i) == 0 || i >= self.n() {
            return None;
        }
        let rest = (self.n() - i) as usize;
        let mut mult = self.mult.clone();
        mult[i as usize - 1] -= 1;
        debug_assert!(mult[rest..].iter().all(|&a| a == 0));
        mult.truncate(rest);
        Some(PartitionMult { mult })
    }
}

impl fmt::Debug for PartitionMult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        let mut first = true;
        for i in self.part_sizes() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{i}^{}", self.multiplicity(i))?;
        }
        write!(f, ")")
    }
}

/// Every partition of `n` exactly once, in reverse lexicographic order of
/// the decreasing part sequence (`(n)` first, `(1^n)` last).
pub fn enumerate_partitions(n: u32) -> Vec<PartitionMult> {
    fn go(remaining: u32, max_part: u32, mult: &mut Vec<u32>, out: &mut Vec<PartitionMult>) {
        if remaining == 0 {
            out.push(PartitionMult { mult: mult.clone() });
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            mult[part as usize - 1] += 1;
            go(remaining - part, part, mult, out);
            mult[part as usize - 1] -= 1;
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    go(n, n, &mut vec![0; n as usize], &mut out);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableSource {
    ProductFormula,
    BruteForce,
}

impl fmt::Display for TableSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableSource::ProductFormula => "product_formula",
            TableSource::BruteForce => "brute_force",
        })
    }
}

/// `P_m(0), ..., P_m(K)` with its provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionTable {
    pub m: u32,
    pub counts: Vec<BigUint>,
    pub source: TableSource,
}

impl PartitionTable {
    pub fn max_k(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }

    /// Structural invariants every table must satisfy.
    pub fn check_invariants(&self) -> Result<(), String> {
        if self.m == 0 {
            return Err("dimension m must be at least 1".into());
        }
        let one = BigUint::from(1u32);
        if self.counts.first() != Some(&one) {
            return Err("counts[0] must be 1".into());
        }
        if self.counts.len() > 1 && self.counts[1] != one {
            return Err("counts[1] must be 1".into());
        }
        let m = BigUint::from(self.m);
        let pairs = &m * (&m - 1u32) / 2u32;
        let triples = &pairs * (&m - 2u32.min(self.m)) / 3u32;
        let small = [
            m.clone(),
            &m + &pairs,
            &m + &m * (&m - 1u32) + &pairs + &triples,
        ];
        for (k, want) in (2..).zip(small) {
            match self.counts.get(k) {
                Some(c) if *c != want => {
                    return Err(format!("counts[{k}] = {c}, expected {want}"));
                }
                _ => {}
            }
        }
        if let Some(k) = (1..self.counts.len()).find(|&k| self.counts[k] < self.counts[k - 1]) {
            return Err(format!("counts decrease at k = {k}"));
        }
        Ok(())
    }

    pub fn to_series(&self, order: usize) -> Option<TruncatedSeries> {
        (order <= self.max_k()).then(|| {
            Series::from_fn(order, |k| {
                Rational::from_integer(BigInt::from(self.counts[k].clone()))
            })
        })
    }

    fn from_series(m: u32, series: &TruncatedSeries) -> Self {
        let counts = series
            .coeffs()
            .iter()
            .map(|c| {
                debug_assert!(c.is_integer());
                c.to_integer()
                    .to_biguint()
                    .expect("partition counts are nonnegative")
            })
            .collect();
        PartitionTable {
            m,
            counts,
            source: TableSource::ProductFormula,
        }
    }
}

/// `P_m(0..=order)` from a product formula, for `m <= 3`.
pub fn product_formula_series(m: u32, order: usize) -> Option<TruncatedSeries> {
    match m {
        1 => Some(Series::geometric(order)),
        2 => Some(Series::product_form_with(order, |_| 1)),
        3 => Some(Series::product_form_with(order, |k| k as i64)),
        _ => None,
    }
}

/// Supplies partition tables, memoized per process and optionally backed
/// by an on-disk cache directory (one file per dimension).
#[derive(Debug, Default)]
pub struct PartitionStore {
    cache_dir: Option<PathBuf>,
    node_budget: Option<u64>,
    progress_notes: bool,
    plane_exponents: Option<fn(usize) -> i64>,
    memo: Mutex<HashMap<u32, PartitionTable>>,
}

impl PartitionStore {
    pub fn in_memory() -> Self {
        Self::default()
    }

    pub fn with_cache_dir(dir: impl Into<PathBuf>) -> Self {
        PartitionStore {
            cache_dir: Some(dir.into()),
            ..Self::default()
        }
    }

    /// Caps the number of search-tree nodes a brute-force count may visit.
    pub fn node_budget(mut self, budget: u64) -> Self {
        self.node_budget = Some(budget);
        self
    }

    /// Print a note on stderr before running a brute-force count.
    pub fn progress_notes(mut self, on: bool) -> Self {
        self.progress_notes = on;
        self
    }

    /// Replaces the exponents `e_k = k` of the plane-partition product.
    /// Exists so that verification can prove it notices a broken formula.
    pub fn with_plane_partition_exponents(mut self, exponent: fn(usize) -> i64) -> Self {
        self.plane_exponents = Some(exponent);
        self
    }

    /// A store with the same settings and an empty in-memory memo.
    pub fn fresh_copy(&self) -> Self {
        PartitionStore {
            cache_dir: self.cache_dir.clone(),
            node_budget: self.node_budget,
            progress_notes: self.progress_notes,
            plane_exponents: self.plane_exponents,
            memo: Mutex::default(),
        }
    }

    pub fn cache_dir(&self) -> Option<&Path> {
        self.cache_dir.as_deref()
    }

    /// `P_m(0..=order)`.
    pub fn table(&self, m: u32, order: usize) -> Result<PartitionTable, PartitionError> {
        if m == 0 {
            return Err(PartitionError::ZeroDimension);
        }
        if let (3, Some(exponent)) = (m, self.plane_exponents) {
            return Ok(PartitionTable::from_series(
                m,
                &Series::product_form_with(order, exponent),
            ));
        }
        if let Some(series) = product_formula_series(m, order) {
            return Ok(PartitionTable::from_series(m, &series));
        }
        if let Some(t) = self.memo.lock().unwrap().get(&m) {
            if t.max_k() >= order {
                return Ok(truncated(t, order));
            }
        }
        if let Some(dir) = &self.cache_dir {
            let path = cache_path(dir, m);
            if path.exists() {
                let t = cache_load(m, &path)?;
                if t.max_k() >= order {
                    let out = truncated(&t, order);
                    self.memo.lock().unwrap().insert(m, t);
                    return Ok(out);
                }
            }
        }
        let t = self.brute_force(m, order)?;
        self.memo.lock().unwrap().insert(m, t.clone());
        Ok(t)
    }

    pub fn series(&self, m: u32, order: usize) -> Result<TruncatedSeries, PartitionError> {
        Ok(self
            .table(m, order)?
            .to_series(order)
            .expect("table covers the requested order"))
    }

    fn brute_force(&self, m: u32, order: usize) -> Result<PartitionTable, PartitionError> {
        if self.progress_notes {
            eprintln!(
                "note: counting {m}-dimensional partitions up to size {order} by brute force"
            );
        }
        let dim = m as usize;
        let counts = match self.node_budget {
            None => order_ideal::count_order_ideals_table(dim, order, Strategy::Tree)?,
            Some(_) => self.brute_force_deepening(m, order)?,
        };
        let table = PartitionTable {
            m,
            counts: counts.into_iter().map(BigUint::from).collect(),
            source: TableSource::BruteForce,
        };
        self.persist(&table)?;
        Ok(table)
    }

    /// Raises the size bound one step at a time so that, when the budget
    /// runs out, every fully counted size can still be flushed to the cache.
    fn brute_force_deepening(&self, m: u32, order: usize) -> Result<Vec<u64>, PartitionError> {
        let budget = self.node_budget.expect("deepening needs a budget");
        let mut spent_so_far = 0u64;
        let mut done: Vec<u64> = vec![1];
        for k in 1..=order {
            let remaining = budget.saturating_sub(spent_so_far);
            match order_ideal::count_with_budget(m as usize, k, Strategy::Tree, Some(remaining)) {
                Ok(counts) => {
                    spent_so_far += counts.iter().sum::<u64>();
                    done = counts;
                }
                Err(PartitionError::ResourceLimit { .. }) => {
                    let completed = done.len() - 1;
                    let partial = PartitionTable {
                        m,
                        counts: done.into_iter().map(BigUint::from).collect(),
                        source: TableSource::BruteForce,
                    };
                    self.persist(&partial)?;
                    return Err(PartitionError::ResourceLimit {
                        m,
                        completed_through: Some(completed),
                        budget,
                    });
                }
                Err(e) => return Err(e),
            }
        }
        Ok(done)
    }

    /// Writes `table` unless the cache already holds at least as much.
    fn persist(&self, table: &PartitionTable) -> Result<(), PartitionError> {
        let Some(dir) = &self.cache_dir else {
            return Ok(());
        };
        let path = cache_path(dir, table.m);
        if path.exists() {
            if let Ok(existing) = cache_load(table.m, &path) {
                if existing.max_k() >= table.max_k() {
                    return Ok(());
                }
            }
        }
        std::fs::create_dir_all(dir).map_err(|source| PartitionError::Io {
            path: dir.clone(),
            source,
        })?;
        cache_store(table, &path)
    }
}

fn truncated(t: &PartitionTable, order: usize) -> PartitionTable {
    PartitionTable {
        m: t.m,
        counts: t.counts[..=order].to_vec(),
        source: t.source,
    }
}

/// Generating series `sum_k P_m(k) t^k` through `order`, consulting the
/// cache directory for `m >= 4` when one is given.
pub fn pm_series(
    m: u32,
    order: usize,
    cache_dir: Option<&Path>,
) -> Result<TruncatedSeries, PartitionError> {
    let store = match cache_dir {
        Some(dir) => PartitionStore::with_cache_dir(dir),
        None => PartitionStore::in_memory(),
    };
    store.series(m, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Scalar;

    fn as_u64(s: &TruncatedSeries) -> Vec<u64> {
        s.coeffs()
            .iter()
            .map(|c| u64::try_from(c.to_integer()).unwrap())
            .collect()
    }

    #[test]
    fn partitions_of_small_n() {
        assert_eq!(enumerate_partitions(1), vec![PartitionMult::single(1)]);
        let three = enumerate_partitions(3);
        assert_eq!(three.len(), 3);
        let mut parts: Vec<Vec<u32>> = three.iter().map(|p| p.parts()).collect();
        parts.sort();
        assert_eq!(parts, vec![vec![1, 1, 1], vec![2, 1], vec![3]]);
        assert_eq!(enumerate_partitions(6).len(), 11);
        assert!(enumerate_partitions(0).is_empty());
    }

    #[test]
    fn partition_count_matches_series() {
        let p2 = pm_series(2, 20, None).unwrap();
        for n in 1..=20u32 {
            let list = enumerate_partitions(n);
            assert_eq!(
                Rational::from_i64(list.len() as i64),
                p2.coeffs()[n as usize]
            );
            assert!(list
                .iter()
                .all(|p| PartitionMult::from_mult(p.mult().to_vec()).is_some()));
        }
    }

    #[test]
    fn multiplicity_helpers() {
        let p = PartitionMult::from_parts(&[2, 1, 1]).unwrap();
        assert_eq!(p.mult(), &[2, 1, 0, 0]);
        assert_eq!(p.part_sizes().collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(p.remove_part(1).unwrap().mult(), &[1, 1, 0]);
        assert_eq!(p.remove_part(2).unwrap().mult(), &[2, 0]);
        assert!(p.remove_part(3).is_none());
        assert!(PartitionMult::single(4).remove_part(4).is_none());
        assert!(PartitionMult::from_mult(vec![1, 1]).is_none());
        assert_eq!(format!("{p:?}"), "(1^2 2^1)");
    }

    #[test]
    fn pm_series_examples() {
        assert_eq!(as_u64(&pm_series(1, 4, None).unwrap()), vec![1, 1, 1, 1, 1]);
        assert_eq!(
            as_u64(&pm_series(3, 6, None).unwrap()),
            vec![1, 1, 3, 6, 13, 24, 48]
        );
        assert_eq!(
            as_u64(&pm_series(4, 5, None).unwrap()),
            vec![1, 1, 4, 10, 26, 59]
        );
        assert!(matches!(
            pm_series(0, 3, None),
            Err(PartitionError::ZeroDimension)
        ));
    }

    #[test]
    fn brute_force_matches_products() {
        for m in 2..=3u32 {
            let product = as_u64(&product_formula_series(m, 10).unwrap());
            let brute = count_order_ideals_table(m as usize, 10, Strategy::Tree).unwrap();
            assert_eq!(product, brute, "m={m}");
        }
    }

    #[test]
    fn monotone_in_dimension() {
        let tables: Vec<Vec<u64>> = (1..=5)
            .map(|m| count_order_ideals_table(m, 7, Strategy::Tree).unwrap())
            .collect();
        for w in tables.windows(2) {
            assert!(w[0].iter().zip(&w[1]).all(|(a, b)| a <= b));
        }
    }

    #[test]
    fn store_persists_and_reuses_brute_force_tables() {
        let dir = tempfile::tempdir().unwrap();
        let store = PartitionStore::with_cache_dir(dir.path());
        let t = store.table(4, 6).unwrap();
        assert_eq!(t.source, TableSource::BruteForce);
        let on_disk = cache_load(4, &cache_path(dir.path(), 4)).unwrap();
        assert_eq!(on_disk, t);
        // a fresh store answers a shorter request from the file
        let again = PartitionStore::with_cache_dir(dir.path())
            .table(4, 3)
            .unwrap();
        assert_eq!(again.counts, t.counts[..=3].to_vec());
    }

    #[test]
    fn exhausted_budget_flushes_partial_progress() {
        let dir = tempfile::tempdir().unwrap();
        let store = PartitionStore::with_cache_dir(dir.path()).node_budget(400);
        let err = store.table(4, 10).unwrap_err();
        let PartitionError::ResourceLimit {
            completed_through: Some(k),
            ..
        } = err
        else {
            panic!("unexpected {err:?}");
        };
        assert!((3..10).contains(&k), "k={k}");
        let partial = cache_load(4, &cache_path(dir.path(), 4)).unwrap();
        assert_eq!(partial.max_k(), k);
        let full = count_order_ideals_table(4, k, Strategy::Tree).unwrap();
        assert_eq!(
            partial.counts,
            full.into_iter().map(BigUint::from).collect::<Vec<_>>()
        );
    }
}
