//! Finite fragments of partition sequences `⟨A^0_α, A^1_α⟩`, where each pair
//! partitions `α × M`.
//!
//! Cells are pairs `(ξ, ζ)` with `ξ < K` and `ζ < M`, ordered
//! lexicographically. Only `A^0_α` is stored; `A^1_α` is its complement in
//! `α × M`, so every fragment satisfies the partition condition by
//! construction.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use thiserror::Error;

pub type Cell = (usize, usize);

/// `ζ ↦ i` selects `A^i_ζ`; `true` stands for `i = 1`.
pub type Selector = BTreeMap<usize, bool>;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StarError {
    #[error("fragment needs K ≥ 1 and M ≥ 1")]
    EmptyIndexSet,
    #[error("row {alpha} has {got} cells, expected {expected}")]
    RowLength { alpha: usize, got: usize, expected: usize },
    #[error("selector index {zeta} out of range, or a cell {cell:?} is not below it")]
    IllFormedSelector { zeta: usize, cell: Option<Cell> },
    #[error("this transformation needs M = 1")]
    NeedSingleFiber,
    #[error("this transformation needs M ≥ 2")]
    NeedManyFibers,
    #[error("bad schedule entry {triple:?} ↦ {alpha}")]
    BadSchedule { triple: (usize, usize, usize), alpha: usize },
    #[error("cell {0:?} is outside the allowed range")]
    CellOutOfRange(Cell),
    #[error("the two cells coincide")]
    SameCell,
    #[error("cutoff {0} is not below K")]
    CutoffOutOfRange(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StarFragment {
    k: usize,
    m: usize,
    /// `zero[α][ξ·M + ζ]` is whether `(ξ, ζ) ∈ A^0_α`.
    zero: Vec<Vec<bool>>,
}

impl StarFragment {
    pub fn new(k: usize, m: usize, zero: Vec<Vec<bool>>) -> Result<Self, StarError> {
        if k == 0 || m == 0 || zero.len() != k {
            return Err(StarError::EmptyIndexSet);
        }
        for (alpha, row) in zero.iter().enumerate() {
            if row.len() != alpha * m {
                return Err(StarError::RowLength { alpha, got: row.len(), expected: alpha * m });
            }
        }
        Ok(StarFragment { k, m, zero })
    }

    /// Every `A^0_α` equal to all of `α × M` (`full`) or empty.
    pub fn constant(k: usize, m: usize, full: bool) -> Result<Self, StarError> {
        Self::new(k, m, (0..k).map(|a| alloc::vec![full; a * m]).collect())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Membership bits of `A^0_α` over `α × M` in cell order.
    pub fn row(&self, alpha: usize) -> &[bool] {
        &self.zero[alpha]
    }

    /// `(ξ, ζ) ∈ A^0_α`; false whenever the cell is not in `α × M`.
    #[inline]
    pub fn in_zero(&self, alpha: usize, (xi, zeta): Cell) -> bool {
        xi < alpha && zeta < self.m && self.zero[alpha][xi * self.m + zeta]
    }

    /// `(ξ, ζ) ∈ A^i_α`.
    #[inline]
    pub fn in_part(&self, alpha: usize, cell: Cell, one: bool) -> bool {
        cell.0 < alpha && cell.1 < self.m && self.in_zero(alpha, cell) != one
    }

    /// Condition (A): each row covers exactly `α × M`.
    pub fn partition_ok(&self) -> bool {
        self.zero.len() == self.k && self.zero.iter().enumerate().all(|(a, r)| r.len() == a * self.m)
    }

    /// `c ∈ A[ε]`.
    pub fn in_selection(&self, cell: Cell, eps: &Selector) -> bool {
        eps.iter().all(|(&zeta, &one)| self.in_part(zeta, cell, one))
    }

    fn set_zero(&mut self, alpha: usize, (xi, zeta): Cell, v: bool) {
        let m = self.m;
        self.zero[alpha][xi * m + zeta] = v;
    }
}

/// `A^i_β = {(ξ, ζ) ∈ β × M : g(β, ξ, ζ) = i}` with `g` drawn from
/// xoshiro256++ seeded by `seed`, in the order β, then ξ, then ζ.
pub fn cohen_fragment(k: usize, m: usize, seed: u64) -> Result<StarFragment, StarError> {
    if k == 0 || m == 0 {
        return Err(StarError::EmptyIndexSet);
    }
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let zero = (0..k)
        .map(|beta| (0..beta * m).map(|_| rng.next_u64() >> 63 == 0).collect())
        .collect();
    StarFragment::new(k, m, zero)
}

/// `|S ∩ A[ε]|` and whether it reaches `t`. Every cell of `S` must lie below
/// every index of the selector, so that each membership is defined.
pub fn dyadicity_check(
    f: &StarFragment,
    s: &[Cell],
    eps: &Selector,
    t: usize,
) -> Result<(usize, bool), StarError> {
    for &zeta in eps.keys() {
        if zeta >= f.k {
            return Err(StarError::IllFormedSelector { zeta, cell: None });
        }
        if let Some(&c) = s.iter().find(|c| c.0 >= zeta || c.1 >= f.m) {
            return Err(StarError::IllFormedSelector { zeta, cell: Some(c) });
        }
    }
    let count = s.iter().filter(|&&c| f.in_selection(c, eps)).count();
    Ok((count, count >= t))
}

/// Schedule `(ζ, ξ, η) ↦ α` for the single-fiber strengthening.
pub type Schedule = BTreeMap<(usize, usize, usize), usize>;

/// Single-fiber strengthening: at each scheduled `α = f(ζ, ξ, η)`,
/// `A^0_α = (B^0_α ∪ {ζ}) ∖ {ξ}`; other rows are unchanged.
pub fn strongify_case1(f: &StarFragment, schedule: &Schedule) -> Result<StarFragment, StarError> {
    if f.m != 1 {
        return Err(StarError::NeedSingleFiber);
    }
    let mut used = BTreeMap::new();
    for (&(zeta, xi, eta), &alpha) in schedule {
        let bad = alpha >= f.k || zeta.max(xi) >= alpha || zeta == xi;
        if bad || used.insert(alpha, (zeta, xi, eta)).is_some() {
            return Err(StarError::BadSchedule { triple: (zeta, xi, eta), alpha });
        }
    }
    let mut out = f.clone();
    for (&(zeta, xi, _), &alpha) in schedule {
        out.set_zero(alpha, (zeta, 0), true);
        out.set_zero(alpha, (xi, 0), false);
    }
    Ok(out)
}

/// Assigns the pairs to `first_alpha, first_alpha + 1, …` (with `η = 0`).
pub fn consecutive_schedule(pairs: &[(usize, usize)], first_alpha: usize) -> Schedule {
    pairs.iter().enumerate().map(|(k, &(z, x))| ((z, x, 0), first_alpha + k)).collect()
}

/// `|A^0_α △ B^0_α|` for every `α`.
pub fn symmetric_differences(a: &StarFragment, b: &StarFragment) -> Vec<usize> {
    a.zero.iter().zip(&b.zero).map(|(r, s)| r.iter().zip(s).filter(|(x, y)| x != y).count()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case2Report {
    pub cutoff: usize,
    /// Size of every equivalence class, listed by least member.
    pub class_sizes: Vec<usize>,
    pub transversal: Vec<Cell>,
    /// Columns `ξ < cutoff` where the transversal has fewer than `M` cells;
    /// these pass through unchanged.
    pub deficient_columns: Vec<usize>,
}

impl Case2Report {
    pub fn max_class_size(&self) -> usize {
        self.class_sizes.iter().copied().max().unwrap_or(0)
    }

    pub fn histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for &s in &self.class_sizes {
            *h.entry(s).or_insert(0) += 1;
        }
        h
    }

    pub fn has_deficit(&self) -> bool {
        !self.deficient_columns.is_empty()
    }
}

/// Trace of a cell over the rows `[cutoff, K)`.
fn tail_trace(f: &StarFragment, cell: Cell, cutoff: usize) -> Vec<bool> {
    (cutoff..f.k).map(|z| f.in_zero(z, cell)).collect()
}

/// Many-fiber strengthening on the cutoff shadow.
///
/// Cells of `cutoff × M` are equivalent when they agree on membership in
/// every `A^0_ζ`, `ζ ∈ [cutoff, K)`. The transversal takes the least cell of
/// each class. Each column whose transversal trace is a full column is
/// transported along the order-preserving bijection onto it; the other
/// columns, and all cells at or above the cutoff, pass through unchanged.
pub fn strongify_case2(f: &StarFragment, cutoff: usize) -> Result<(StarFragment, Case2Report), StarError> {
    if f.m < 2 {
        return Err(StarError::NeedManyFibers);
    }
    if cutoff >= f.k {
        return Err(StarError::CutoffOutOfRange(cutoff));
    }
    let mut classes: BTreeMap<Vec<bool>, Vec<Cell>> = BTreeMap::new();
    for xi in 0..cutoff {
        for zeta in 0..f.m {
            classes.entry(tail_trace(f, (xi, zeta), cutoff)).or_default().push((xi, zeta));
        }
    }
    let mut reps: Vec<(Cell, usize)> = classes.values().map(|c| (c[0], c.len())).collect();
    reps.sort();
    let transversal: Vec<Cell> = reps.iter().map(|r| r.0).collect();
    let class_sizes = reps.iter().map(|r| r.1).collect();

    // column ξ ↦ transversal cells in it, in order
    let mut columns: Vec<Vec<Cell>> = alloc::vec![Vec::new(); cutoff];
    for &c in &transversal {
        columns[c.0].push(c);
    }
    let deficient_columns: Vec<usize> = (0..cutoff).filter(|&x| columns[x].len() < f.m).collect();

    let transport = |c: Cell| -> Cell {
        match columns.get(c.0) {
            Some(col) if col.len() == f.m => col[c.1],
            _ => c,
        }
    };
    let mut out = f.clone();
    for alpha in 0..f.k {
        for xi in 0..alpha {
            for zeta in 0..f.m {
                let v = f.in_zero(alpha, transport((xi, zeta)));
                out.set_zero(alpha, (xi, zeta), v);
            }
        }
    }
    Ok((out, Case2Report { cutoff, class_sizes, transversal, deficient_columns }))
}

/// Least `α ∈ [β, K)` with exactly one of `x`, `y` in `A^0_α`.
pub fn separation_check(f: &StarFragment, x: Cell, y: Cell, beta: usize) -> Result<Option<usize>, StarError> {
    if x == y {
        return Err(StarError::SameCell);
    }
    for c in [x, y] {
        if c.0 >= beta || c.1 >= f.m {
            return Err(StarError::CellOutOfRange(c));
        }
    }
    Ok((beta..f.k).find(|&a| f.in_zero(a, x) != f.in_zero(a, y)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub beta: usize,
    pub depth: usize,
    pub cells_checked: usize,
    /// Tail cells with a basic neighbourhood missing `S`, in cell order.
    pub failing: Vec<Cell>,
}

impl ClosureReport {
    pub fn least_failing(&self) -> Option<Cell> {
        self.failing.first().copied()
    }

    pub fn all_pass(&self) -> bool {
        self.failing.is_empty()
    }
}

/// Calls `visit` on every subset of `pool` with at most `depth` elements.
fn for_each_subset(pool: &[usize], depth: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn go(pool: &[usize], depth: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if !visit(cur) {
            return false;
        }
        if cur.len() == depth {
            return true;
        }
        for (k, &z) in pool.iter().enumerate() {
            cur.push(z);
            let ok = go(&pool[k + 1..], depth, cur, visit);
            cur.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    go(pool, depth, &mut Vec::new(), visit)
}

/// For each tail cell `c = (γ, ζ)`, `γ ∈ [β, K)`: does every basic
/// neighbourhood `A[ε] ∋ c` with `dom ε ⊆ [β, K)`, `|dom ε| ≤ depth` meet
/// `S`? A neighbourhood contains `c` only if every index in its domain is
/// above `γ`, and then `ε` is fixed by the side `c` falls on.
pub fn star_topology_closure(
    f: &StarFragment,
    s: &[Cell],
    beta: usize,
    depth: usize,
) -> Result<ClosureReport, StarError> {
    if let Some(&c) = s.iter().find(|c| c.0 >= beta || c.1 >= f.m) {
        return Err(StarError::CellOutOfRange(c));
    }
    let mut failing = Vec::new();
    let mut checked = 0;
    for gamma in beta..f.k {
        let pool: Vec<usize> = (gamma + 1..f.k).collect();
        for zeta in 0..f.m {
            let c = (gamma, zeta);
            checked += 1;
            let ok = for_each_subset(&pool, depth, &mut |dom| {
                s.iter().any(|&x| dom.iter().all(|&a| f.in_zero(a, x) == f.in_zero(a, c)))
            });
            if !ok {
                failing.push(c);
            }
        }
    }
    Ok(ClosureReport { beta, depth, cells_checked: checked, failing })
}

/// Groups points of `[0, n)` by their trace `{A ∈ 𝒜 : x ∈ A}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberMap {
    pub family_size: usize,
    /// trace ↦ points with that trace
    pub fibers: BTreeMap<Vec<bool>, Vec<usize>>,
}

impl FiberMap {
    pub fn fiber_count(&self) -> usize {
        self.fibers.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.fibers.values().map(Vec::len).collect()
    }

    /// `#fibers ≤ 2^|𝒜|`.
    pub fn within_bound(&self) -> bool {
        self.family_size >= usize::BITS as usize - 1 || self.fiber_count() <= 1usize << self.family_size
    }
}

pub fn splitting_fiber_map(n: usize, family: &[Vec<bool>]) -> FiberMap {
    let mut fibers: BTreeMap<Vec<bool>, Vec<usize>> = BTreeMap::new();
    for x in 0..n {
        let trace = family.iter().map(|a| a.get(x).copied().unwrap_or(false)).collect();
        fibers.entry(trace).or_default().push(x);
    }
    FiberMap { family_size: family.len(), fibers }
}

/// No member contains part of a fiber while missing another part.
pub fn no_member_splits(map: &FiberMap, family: &[Vec<bool>]) -> bool {
    let has = |a: &Vec<bool>, x: usize| a.get(x).copied().unwrap_or(false);
    family.iter().all(|a| map.fibers.values().all(|fib| fib.iter().all(|&x| has(a, x) == has(a, fib[0]))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn cohen_basics() {
        let f = cohen_fragment(8, 2, 1).unwrap();
        assert!(f.partition_ok());
        assert_eq!(f, cohen_fragment(8, 2, 1).unwrap());
        assert_ne!(f, cohen_fragment(8, 2, 2).unwrap());
        let one = cohen_fragment(1, 3, 5).unwrap();
        assert!(one.row(0).is_empty());
        assert_eq!(cohen_fragment(0, 1, 0), Err(StarError::EmptyIndexSet));
    }

    #[test]
    fn dyadicity_examples() {
        let f = cohen_fragment(16, 2, 3).unwrap();
        let s: Vec<Cell> = (0..8).flat_map(|x| [(x, 0), (x, 1)]).collect();
        assert_eq!(dyadicity_check(&f, &s, &Selector::new(), 1).unwrap(), (16, true));
        let eps = Selector::from([(10, true)]);
        let (c, _) = dyadicity_check(&f, &s, &eps, 0).unwrap();
        assert_eq!(dyadicity_check(&f, &s, &eps, c + 1).unwrap(), (c, false));
        assert!(!dyadicity_check(&f, &s, &eps, s.len() + 1).unwrap().1);
        let bad = Selector::from([(5, false)]);
        assert!(matches!(dyadicity_check(&f, &s, &bad, 1), Err(StarError::IllFormedSelector { .. })));
        let out = Selector::from([(16, false)]);
        assert!(dyadicity_check(&f, &s, &out, 1).is_err());
    }

    #[test]
    fn case1_example() {
        let f = cohen_fragment(40, 1, 9).unwrap();
        let sched = Schedule::from([((3, 5, 0), 37)]);
        let g = strongify_case1(&f, &sched).unwrap();
        assert!(g.in_zero(37, (3, 0)));
        assert!(!g.in_zero(37, (5, 0)));
        assert!(symmetric_differences(&f, &g).iter().all(|&d| d <= 2));
        let sep = separation_check(&g, (3, 0), (5, 0), 30).unwrap().unwrap();
        assert!((30..=37).contains(&sep));
        assert_eq!(strongify_case1(&f, &Schedule::new()).unwrap(), f);
    }

    #[test]
    fn case1_rejects_bad_schedules() {
        let f = cohen_fragment(40, 1, 9).unwrap();
        for sched in [
            Schedule::from([((3, 5, 0), 5)]),
            Schedule::from([((3, 5, 0), 40)]),
            Schedule::from([((3, 3, 0), 20)]),
            Schedule::from([((3, 5, 0), 20), ((1, 2, 0), 20)]),
        ] {
            assert!(matches!(strongify_case1(&f, &sched), Err(StarError::BadSchedule { .. })));
        }
        let wide = cohen_fragment(8, 2, 0).unwrap();
        assert_eq!(strongify_case1(&wide, &Schedule::new()), Err(StarError::NeedSingleFiber));
    }

    #[test]
    fn case2_degenerate_table() {
        let f = StarFragment::constant(16, 3, false).unwrap();
        let (g, rep) = strongify_case2(&f, 4).unwrap();
        assert_eq!(rep.class_sizes, vec![12]);
        assert_eq!(rep.transversal, vec![(0, 0)]);
        assert_eq!(rep.deficient_columns, vec![0, 1, 2, 3]);
        assert!(g.partition_ok());
        assert_eq!(strongify_case2(&f, 16).unwrap_err(), StarError::CutoffOutOfRange(16));
    }

    #[test]
    fn case2_generic_table() {
        let f = cohen_fragment(32, 4, 7).unwrap();
        let (g, rep) = strongify_case2(&f, 8).unwrap();
        assert!(g.partition_ok());
        assert!(rep.max_class_size() <= 2);
        assert_eq!(rep.class_sizes.iter().sum::<usize>(), 32);
        for (i, &a) in rep.transversal.iter().enumerate() {
            for &b in &rep.transversal[i + 1..] {
                assert_ne!(tail_trace(&f, a, 8), tail_trace(&f, b, 8));
            }
        }
    }

    #[test]
    fn separation_degenerate() {
        let f = StarFragment::constant(16, 2, false).unwrap();
        assert_eq!(separation_check(&f, (1, 0), (2, 1), 4).unwrap(), None);
        assert_eq!(separation_check(&f, (1, 0), (1, 0), 4), Err(StarError::SameCell));
        assert_eq!(separation_check(&f, (5, 0), (1, 0), 4), Err(StarError::CellOutOfRange((5, 0))));
    }

    #[test]
    fn closure_trivial_cases() {
        let f = cohen_fragment(16, 2, 1).unwrap();
        let s = vec![(0, 0), (3, 1)];
        let r = star_topology_closure(&f, &s, 8, 0).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.cells_checked, 16);
        let r = star_topology_closure(&f, &[], 8, 1).unwrap();
        assert_eq!(r.failing.len(), 16);
        assert_eq!(r.least_failing(), Some((8, 0)));
        assert!(star_topology_closure(&f, &[(9, 0)], 8, 1).is_err());
    }

    #[test]
    fn fiber_examples() {
        let evens: Vec<bool> = (0..16).map(|x| x % 2 == 0).collect();
        let low: Vec<bool> = (0..16).map(|x| x < 8).collect();
        let fam = vec![evens, low];
        let m = splitting_fiber_map(16, &fam);
        assert_eq!(m.sizes(), vec![4, 4, 4, 4]);
        assert!(no_member_splits(&m, &fam));
        assert_eq!(splitting_fiber_map(16, &[]).sizes(), vec![16]);
        let singletons: Vec<Vec<bool>> = (0..8).map(|i| (0..8).map(|x| x == i).collect()).collect();
        let m = splitting_fiber_map(8, &singletons);
        assert_eq!(m.fiber_count(), 8);
        assert!(m.within_bound());
    }

    #[test]
    fn subsets_enumeration() {
        let mut seen = Vec::new();
        for_each_subset(&[1, 2, 3], 2, &mut |d| {
            seen.push(d.to_vec());
            true
        });
        assert_eq!(seen.len(), 1 + 3 + 3);
    }
}
