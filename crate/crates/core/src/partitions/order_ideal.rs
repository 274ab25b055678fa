//! Brute-force enumeration of finite order ideals (down-closed subsets) of `N^m`.
//!
//! An ideal of size `k` lives inside the box `[0, k)^m`, so points are packed
//! into a single `u128` in mixed radix `k` with the first coordinate most
//! significant. With that packing, numeric order on codes equals
//! lexicographic order on points.
//!
//! Two strategies are provided and are meant to be checked against each
//! other:
//!
//! * [`Strategy::Tree`] walks the canonical-parent tree. The parent of a
//!   nonempty ideal deletes its lexicographically largest point (always a
//!   maximal element), so the children of `I` are `I + p` for the addable
//!   corners `p` lying lexicographically after every point of `I`. Each ideal
//!   is reached exactly once and nothing is hashed except membership.
//! * [`Strategy::Dedup`] grows ideals level by level by adding any addable
//!   corner and removes duplicates with a set of sorted point lists.

use std::collections::{BTreeSet, HashSet};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use super::PartitionError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Tree,
    Dedup,
}

/// A finite down-closed subset of `N^dim`, points sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderIdeal {
    dim: usize,
    points: Vec<Vec<u32>>,
}

impl OrderIdeal {
    /// Validates and canonicalizes a point list.
    pub fn new(dim: usize, mut points: Vec<Vec<u32>>) -> Result<Self, String> {
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(format!("point {p:?} does not have {dim} coordinates"));
        }
        points.sort();
        points.dedup();
        let ideal = OrderIdeal { dim, points };
        if !ideal.is_down_closed() {
            return Err("point set is not down-closed".to_string());
        }
        Ok(ideal)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<u32>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, point: &[u32]) -> bool {
        self.points
            .binary_search_by(|p| p.as_slice().cmp(point))
            .is_ok()
    }

    /// Checks the down-closure condition directly: every point's
    /// immediate predecessors along each axis are present. Together with
    /// finiteness that forces every coordinatewise smaller point in.
    pub fn is_down_closed(&self) -> bool {
        let mut scratch = Vec::with_capacity(self.dim);
        self.points.iter().all(|p| {
            (0..self.dim).all(|i| {
                if p[i] == 0 {
                    return true;
                }
                scratch.clear();
                scratch.extend_from_slice(p);
                scratch[i] -= 1;
                self.contains(&scratch)
            })
        }) && self.points.windows(2).all(|w| w[0] < w[1])
    }
}

/// Mixed-radix packing of points in `[0, side)^dim`.
#[derive(Debug, Clone, Copy)]
struct Lattice {
    dim: usize,
    side: u128,
    /// `strides[i] = side^(dim-1-i)`
    strides: [u128; MAX_DIM],
}

/// Dimensions beyond this would not fit any nontrivial box in a `u128` anyway.
const MAX_DIM: usize = 127;

impl Lattice {
    fn new(dim: usize, max_size: usize) -> Result<Self, PartitionError> {
        let side = max_size.max(1) as u128;
        let too_large = || PartitionError::BoxTooLarge {
            m: dim as u32,
            k: max_size,
        };
        if dim == 0 || dim > MAX_DIM {
            return Err(too_large());
        }
        let mut strides = [0u128; MAX_DIM];
        let mut s = 1u128;
        for i in (0..dim).rev() {
            strides[i] = s;
            if i > 0 {
                s = s.checked_mul(side).ok_or_else(too_large)?;
            }
        }
        s.checked_mul(side).ok_or_else(too_large)?;
        Ok(Lattice { dim, side, strides })
    }

    #[inline]
    fn coord(&self, code: u128, axis: usize) -> u128 {
        (code / self.strides[axis]) % self.side
    }

    fn decode(&self, code: u128) -> Vec<u32> {
        (0..self.dim).map(|i| self.coord(code, i) as u32).collect()
    }

    /// Last axis with a nonzero coordinate, or `None` for the origin.
    fn last_nonzero(&self, code: u128) -> Option<usize> {
        (0..self.dim).rev().find(|&i| self.coord(code, i) != 0)
    }

    /// Whether `code + e_axis` stays inside the box.
    #[inline]
    fn can_step(&self, code: u128, axis: usize) -> bool {
        self.coord(code, axis) + 1 < self.side
    }

    /// All `p - e_i` for nonzero coordinates of `p` are in the set.
    fn predecessors_in(&self, code: u128, contains: impl Fn(u128) -> bool) -> bool {
        (0..self.dim).all(|i| self.coord(code, i) == 0 || contains(code - self.strides[i]))
    }
}

/// Nodes visited so far against an optional ceiling.
struct Budget {
    limit: Option<u64>,
    used: AtomicU64,
    exhausted: AtomicBool,
}

impl Budget {
    fn new(limit: Option<u64>) -> Self {
        Budget {
            limit,
            used: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
        }
    }

    #[inline]
    fn tick(&self) -> bool {
        let Some(limit) = self.limit else { return true };
        if self.exhausted.load(Ordering::Relaxed) {
            return false;
        }
        if self.used.fetch_add(1, Ordering::Relaxed) >= limit {
            self.exhausted.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }
}

/// Canonical-parent-tree children of the ideal `members` whose largest point
/// is `last`. Candidates `p` are produced once each, from `p - e_j` with `j`
/// the last nonzero axis of `p`.
fn tree_children(lat: &Lattice, path: &[u128], members: &HashSet<u128>) -> Vec<u128> {
    let Some(&last) = path.last() else {
        return vec![0];
    };
    let mut out = Vec::new();
    for &x in path {
        let from = lat.last_nonzero(x).unwrap_or(0);
        for j in from..lat.dim {
            if !lat.can_step(x, j) {
                continue;
            }
            let p = x + lat.strides[j];
            if p > last && !members.contains(&p) && lat.predecessors_in(p, |c| members.contains(&c))
            {
                out.push(p);
            }
        }
    }
    out
}

fn tree_count_from(
    lat: &Lattice,
    max_size: usize,
    path: &mut Vec<u128>,
    members: &mut HashSet<u128>,
    counts: &mut [u64],
    budget: &Budget,
) -> bool {
    if !budget.tick() {
        return false;
    }
    counts[path.len()] += 1;
    if path.len() == max_size {
        return true;
    }
    for child in tree_children(lat, path, members) {
        path.push(child);
        members.insert(child);
        let ok = tree_count_from(lat, max_size, path, members, counts, budget);
        members.remove(&child);
        path.pop();
        if !ok {
            return false;
        }
    }
    true
}

/// Depth of the sequential prefix before subtrees are handed to rayon.
const SPLIT_DEPTH: usize = 4;

fn tree_counts(dim: usize, max_size: usize, budget: &Budget) -> Result<Vec<u64>, PartitionError> {
    let lat = Lattice::new(dim, max_size)?;
    let mut counts = vec![0u64; max_size + 1];
    let split = SPLIT_DEPTH.min(max_size);

    // Breadth-first down to `split`, counting shallow ideals as we go.
    let mut frontier: Vec<Vec<u128>> = vec![Vec::new()];
    for count in counts.iter_mut().take(split) {
        *count += frontier.len() as u64;
        let mut next = Vec::new();
        for path in &frontier {
            if !budget.tick() {
                return Err(budget_error(dim, budget));
            }
            let members: HashSet<u128> = path.iter().copied().collect();
            for child in tree_children(&lat, path, &members) {
                let mut p = path.clone();
                p.push(child);
                next.push(p);
            }
        }
        frontier = next;
    }

    let partials: Vec<Option<Vec<u64>>> = frontier
        .into_par_iter()
        .map(|mut path| {
            let mut local = vec![0u64; max_size + 1];
            let mut members: HashSet<u128> = path.iter().copied().collect();
            tree_count_from(&lat, max_size, &mut path, &mut members, &mut local, budget)
                .then_some(local)
        })
        .collect();
    for local in partials {
        let local = local.ok_or_else(|| budget_error(dim, budget))?;
        for (c, l) in counts.iter_mut().zip(local) {
            *c += l;
        }
    }
    Ok(counts)
}

fn budget_error(dim: usize, budget: &Budget) -> PartitionError {
    PartitionError::ResourceLimit {
        m: dim as u32,
        completed_through: None,
        budget: budget.limit.unwrap_or(0),
    }
}

/// Addable corners of an arbitrary ideal, in any order.
fn addable_corners(lat: &Lattice, ideal: &[u128]) -> Vec<u128> {
    if ideal.is_empty() {
        return vec![0];
    }
    let contains = |c: u128| ideal.binary_search(&c).is_ok();
    let mut out: Vec<u128> = ideal
        .iter()
        .flat_map(|&x| {
            (0..lat.dim)
                .filter(move |&j| lat.can_step(x, j))
                .map(move |j| x + lat.strides[j])
        })
        .filter(|&p| !contains(p) && lat.predecessors_in(p, contains))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn dedup_counts(dim: usize, max_size: usize, budget: &Budget) -> Result<Vec<u64>, PartitionError> {
    let lat = Lattice::new(dim, max_size)?;
    let mut counts = vec![1u64];
    let mut level: BTreeSet<Vec<u128>> = BTreeSet::from([Vec::new()]);
    for _ in 0..max_size {
        let next: BTreeSet<Vec<u128>> = level
            .par_iter()
            .flat_map_iter(|ideal| {
                addable_corners(&lat, ideal).into_iter().map(move |p| {
                    let mut grown = ideal.clone();
                    let at = grown.partition_point(|&c| c < p);
                    grown.insert(at, p);
                    grown
                })
            })
            .collect();
        for _ in 0..next.len() {
            if !budget.tick() {
                return Err(budget_error(dim, budget));
            }
        }
        counts.push(next.len() as u64);
        level = next;
    }
    Ok(counts)
}

/// Counts order ideals of every size `0..=max_size` in `N^dim`.
pub fn count_order_ideals_table(
    dim: usize,
    max_size: usize,
    strategy: Strategy,
) -> Result<Vec<u64>, PartitionError> {
    count_with_budget(dim, max_size, strategy, None)
}

pub(crate) fn count_with_budget(
    dim: usize,
    max_size: usize,
    strategy: Strategy,
    node_budget: Option<u64>,
) -> Result<Vec<u64>, PartitionError> {
    if dim == 0 {
        return Err(PartitionError::BoxTooLarge { m: 0, k: max_size });
    }
    if dim == 1 || max_size == 0 {
        return Ok(vec![1; max_size + 1]);
    }
    let budget = Budget::new(node_budget);
    match strategy {
        Strategy::Tree => tree_counts(dim, max_size, &budget),
        Strategy::Dedup => dedup_counts(dim, max_size, &budget),
    }
}

/// Number of order ideals of size `k` in `N^dim`.
pub fn count_order_ideals(dim: usize, k: usize) -> Result<u64, PartitionError> {
    Ok(count_order_ideals_table(dim, k, Strategy::Tree)?[k])
}

/// Streams every order ideal of size `k` in `N^dim` exactly once.
pub fn enumerate_order_ideals(dim: usize, k: usize) -> Result<OrderIdeals, PartitionError> {
    let lat = Lattice::new(dim, k)?;
    Ok(OrderIdeals {
        lat,
        target: k,
        stack: Vec::new(),
        path: Vec::new(),
        members: HashSet::new(),
        started: false,
    })
}

/// Iterator returned by [`enumerate_order_ideals`]; a depth-first walk of
/// the canonical-parent tree.
pub struct OrderIdeals {
    lat: Lattice,
    target: usize,
    stack: Vec<Vec<u128>>,
    path: Vec<u128>,
    members: HashSet<u128>,
    started: bool,
}

impl OrderIdeals {
    fn emit(&self) -> OrderIdeal {
        let mut codes = self.path.clone();
        codes.sort_unstable();
        OrderIdeal {
            dim: self.lat.dim,
            points: codes.into_iter().map(|c| self.lat.decode(c)).collect(),
        }
    }
}

impl Iterator for OrderIdeals {
    type Item = OrderIdeal;

    fn next(&mut self) -> Option<OrderIdeal> {
        if !self.started {
            self.started = true;
            if self.target == 0 {
                return Some(OrderIdeal {
                    dim: self.lat.dim,
                    points: Vec::new(),
                });
            }
            self.stack
                .push(tree_children(&self.lat, &self.path, &self.members));
        }
        loop {
            let top = self.stack.last_mut()?;
            let Some(child) = top.pop() else {
                self.stack.pop();
                if let Some(c) = self.path.pop() {
                    self.members.remove(&c);
                }
                continue;
            };
            self.path.push(child);
            self.members.insert(child);
            if self.path.len() == self.target {
                let ideal = self.emit();
                self.path.pop();
                self.members.remove(&child);
                return Some(ideal);
            }
            self.stack
                .push(tree_children(&self.lat, &self.path, &self.members));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_ideal_for_every_dimension() {
        for m in 1..=6 {
            assert_eq!(count_order_ideals(m, 0).unwrap(), 1);
            let all: Vec<_> = enumerate_order_ideals(m, 0).unwrap().collect();
            assert_eq!(all.len(), 1);
            assert!(all[0].is_empty());
        }
    }

    #[test]
    fn size_two_ideals_are_origin_plus_unit_vector() {
        assert_eq!(count_order_ideals(4, 2).unwrap(), 4);
        for ideal in enumerate_order_ideals(4, 2).unwrap() {
            assert_eq!(ideal.points()[0], vec![0; 4]);
            assert_eq!(ideal.points()[1].iter().sum::<u32>(), 1);
        }
    }

    #[test]
    fn hand_counted_plane_partitions_of_three() {
        assert_eq!(count_order_ideals(3, 3).unwrap(), 6);
    }

    #[test]
    fn young_diagrams_of_three() {
        let mut got: Vec<Vec<Vec<u32>>> = enumerate_order_ideals(2, 3)
            .unwrap()
            .map(|i| i.points().to_vec())
            .collect();
        got.sort();
        let row = vec![vec![0, 0], vec![0, 1], vec![0, 2]];
        let col = vec![vec![0, 0], vec![1, 0], vec![2, 0]];
        let hook = vec![vec![0, 0], vec![0, 1], vec![1, 0]];
        let mut want = vec![row, col, hook];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn one_dimensional_chain() {
        let all: Vec<_> = enumerate_order_ideals(1, 5).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert_eq!(
            all[0].points(),
            &[vec![0], vec![1], vec![2], vec![3], vec![4]]
        );
    }

    #[test]
    fn thirteen_plane_partitions_of_four() {
        let all: Vec<_> = enumerate_order_ideals(3, 4).unwrap().collect();
        assert_eq!(all.len(), 13);
        let distinct: HashSet<_> = all.iter().cloned().collect();
        assert_eq!(distinct.len(), 13);
        assert!(all.iter().all(|i| i.is_down_closed() && i.len() == 4));
    }

    #[test]
    fn stream_agrees_with_counter() {
        for m in 2..=4 {
            let table = count_order_ideals_table(m, 6, Strategy::Tree).unwrap();
            for (k, &count) in table.iter().enumerate() {
                assert_eq!(
                    enumerate_order_ideals(m, k).unwrap().count() as u64,
                    count,
                    "m={m} k={k}"
                );
            }
        }
    }

    #[test]
    fn strategies_agree_small() {
        for m in 1..=4 {
            let a = count_order_ideals_table(m, 7, Strategy::Tree).unwrap();
            let b = count_order_ideals_table(m, 7, Strategy::Dedup).unwrap();
            assert_eq!(a, b, "m={m}");
        }
    }

    #[test]
    fn four_dimensional_partitions() {
        let t = count_order_ideals_table(4, 5, Strategy::Tree).unwrap();
        assert_eq!(t, vec![1, 1, 4, 10, 26, 59]);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let err = count_with_budget(4, 9, Strategy::Tree, Some(50)).unwrap_err();
        assert!(matches!(err, PartitionError::ResourceLimit { m: 4, .. }));
        let err = count_with_budget(3, 9, Strategy::Dedup, Some(50)).unwrap_err();
        assert!(matches!(err, PartitionError::ResourceLimit { m: 3, .. }));
    }

    #[test]
    fn rejects_non_ideals() {
        assert!(OrderIdeal::new(2, vec![vec![0, 0], vec![1, 1]]).is_err());
        assert!(OrderIdeal::new(2, vec![vec![0, 0], vec![1]]).is_err());
        let ok = OrderIdeal::new(2, vec![vec![1, 0], vec![0, 0]]).unwrap();
        assert_eq!(ok.points(), &[vec![0, 0], vec![1, 0]]);
    }

    #[test]
    fn oversized_box_is_refused() {
        assert!(matches!(
            count_order_ideals(60, 10),
            Err(PartitionError::BoxTooLarge { .. })
        ));
    }
}
