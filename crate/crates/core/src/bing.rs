//! Bing's irrational-slope space on the rational closed upper half-plane.
//!
//! A point `(a, b)` has two feet `a ∓ b/√3` on the x-axis; its basic
//! neighbourhoods are the point itself together with small rational
//! intervals around both feet. A finitely generated open set is recorded by
//! its axis trace, a finite union of open rational intervals, and a point is
//! in its closure exactly when one of its feet lies in the closed hull of
//! that trace.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::qroot3::{parse_q, q, QRoot3, Q};
use crate::ParseError;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BingError {
    #[error("interval system is empty")]
    EmptySystem,
    #[error("interval ({lo}, {hi}) is empty")]
    DegenerateInterval { lo: Q, hi: Q },
    #[error("point has negative height {0}")]
    NegativeHeight(Q),
    #[error("no exactly verified witness found")]
    WitnessNotFound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BingPoint {
    a: Q,
    b: Q,
}

impl BingPoint {
    pub fn new(a: Q, b: Q) -> Result<Self, BingError> {
        if b.is_negative() {
            return Err(BingError::NegativeHeight(b));
        }
        Ok(BingPoint { a, b })
    }

    pub fn axis(a: Q) -> Self {
        BingPoint { a, b: Q::zero() }
    }

    pub fn a(&self) -> Q {
        self.a
    }

    pub fn b(&self) -> Q {
        self.b
    }

    /// `(a − b/√3, a + b/√3)`, written as `a ∓ (b/3)·√3`.
    pub fn feet(&self) -> (QRoot3, QRoot3) {
        let s = self.b / q(3, 1);
        (QRoot3::new(self.a, -s), QRoot3::new(self.a, s))
    }
}

impl fmt::Display for BingPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl FromStr for BingPoint {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or(ParseError::new("Bing point", s))?;
        let (a, b) = body.split_once(',').ok_or(ParseError::new("Bing point", s))?;
        BingPoint::new(parse_q(a)?, parse_q(b)?).map_err(|_| ParseError::new("Bing point", s))
    }
}

/// A normalized finite union of open rational intervals on the axis.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AxisSystem {
    intervals: Vec<(Q, Q)>,
}

impl AxisSystem {
    /// Sorts the intervals and merges overlapping ones. Intervals that only
    /// touch at an endpoint stay separate, since the shared endpoint is not
    /// covered.
    pub fn new(intervals: Vec<(Q, Q)>) -> Result<Self, BingError> {
        let mut iv = intervals;
        if let Some(&(lo, hi)) = iv.iter().find(|(lo, hi)| lo >= hi) {
            return Err(BingError::DegenerateInterval { lo, hi });
        }
        iv.sort();
        let mut out: Vec<(Q, Q)> = Vec::with_capacity(iv.len());
        for (lo, hi) in iv {
            match out.last_mut() {
                Some(last) if lo < last.1 => last.1 = last.1.max(hi),
                _ => out.push((lo, hi)),
            }
        }
        Ok(AxisSystem { intervals: out })
    }

    pub fn single(lo: Q, hi: Q) -> Result<Self, BingError> {
        Self::new(alloc::vec![(lo, hi)])
    }

    pub fn intervals(&self) -> &[(Q, Q)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Whether `x` lies in the closed hull `⋃ [lo, hi]`.
    pub fn hull_contains(&self, x: &QRoot3) -> bool {
        self.intervals.iter().any(|&(lo, hi)| {
            *x >= QRoot3::rational(lo) && *x <= QRoot3::rational(hi)
        })
    }

    /// Midpoint of the first interval: a rational axis point inside the set.
    pub fn axis_point(&self) -> Option<BingPoint> {
        self.intervals.first().map(|&(lo, hi)| BingPoint::axis((lo + hi) / q(2, 1)))
    }

    /// Smallest left end and largest right end.
    pub fn span(&self) -> Option<(Q, Q)> {
        let lo = self.intervals.first()?.0;
        let hi = self.intervals.iter().map(|iv| iv.1).max()?;
        Some((lo, hi))
    }

    /// Whether the closed hulls of the two systems are disjoint.
    pub fn hull_disjoint(&self, other: &AxisSystem) -> bool {
        self.intervals
            .iter()
            .all(|&(l1, h1)| other.intervals.iter().all(|&(l2, h2)| h1 < l2 || h2 < l1))
    }
}

impl fmt::Display for AxisSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, (lo, hi)) in self.intervals.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "({lo},{hi})")?;
        }
        f.write_str("]")
    }
}

impl FromStr for AxisSystem {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or(ParseError::new("axis system", s))?;
        let mut intervals = Vec::new();
        let mut rest = body.trim();
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or(ParseError::new("interval", s))?;
            let close = open.find(')').ok_or(ParseError::new("interval", s))?;
            let (lo, hi) = open[..close].split_once(',').ok_or(ParseError::new("interval", s))?;
            intervals.push((parse_q(lo)?, parse_q(hi)?));
            rest = open[close + 1..].trim_start();
            rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
        }
        AxisSystem::new(intervals).map_err(|_| ParseError::new("axis system (empty interval)", s))
    }
}

pub fn bing_closure_contains(system: &AxisSystem, p: &BingPoint) -> bool {
    let (left, right) = p.feet();
    system.hull_contains(&left) || system.hull_contains(&right)
}

/// Target point with a safety radius inside one interval system.
fn target(system: &AxisSystem) -> Result<(Q, Q, Q), BingError> {
    let &(lo, hi) = system.intervals.first().ok_or(BingError::EmptySystem)?;
    let mid = (lo + hi) / q(2, 1);
    Ok((mid, (hi - lo) / q(4, 1), hi))
}

/// Convergents `p/q` of the continued fraction `√3 = [1; 1, 2, 1, 2, …]`.
fn sqrt3_convergents() -> impl Iterator<Item = Q> {
    // (current, previous, index of the next partial quotient)
    let mut state = ((1i128, 1i128), (1i128, 0i128), 1usize);
    core::iter::from_fn(move || {
        let ((p1, q1), (p2, q2), k) = state;
        let out = Q::new(p1, q1);
        let a = if k % 2 == 1 { 1 } else { 2 };
        state = ((a * p1 + p2, a * q1 + q2), (p1, q1), k + 1);
        Some(out)
    })
}

/// A point off the axis lying in the closure of both systems.
///
/// Chooses targets `t1 < t2` inside the two systems, sets `a` to their
/// midpoint and `b ≈ √3·(t2 − t1)/2` using convergents of `√3` until both
/// feet land in the target intervals, then verifies both memberships exactly.
pub fn bing_au_witness(s1: &AxisSystem, s2: &AxisSystem) -> Result<BingPoint, BingError> {
    let (mut t1, r1, _) = target(s1)?;
    let (mut t2, mut r2, hi2) = target(s2)?;
    if t1 == t2 {
        // shared interval: move the second target right, inside the same interval
        t2 = (t2 + hi2) / q(2, 1);
        r2 = (hi2 - t2) / q(2, 1);
    }
    if t1 > t2 {
        core::mem::swap(&mut t1, &mut t2);
    }
    let r = r1.min(r2);
    let a = (t1 + t2) / q(2, 1);
    let h = (t2 - t1) / q(2, 1);
    for c in sqrt3_convergents().take(48) {
        let p = BingPoint { a, b: h * c };
        let (left, right) = p.feet();
        let near = |f: QRoot3, t: Q| {
            f > QRoot3::rational(t - r) && f < QRoot3::rational(t + r)
        };
        if near(left, t1) && near(right, t2) {
            if bing_closure_contains(s1, &p) && bing_closure_contains(s2, &p) {
                return Ok(p);
            }
            break;
        }
    }
    Err(BingError::WitnessNotFound)
}

/// Sign of `u + v·√3` for integers.
fn sign_int_root3(u: i128, v: i128) -> Ordering {
    let su = u.cmp(&0);
    let sv = v.cmp(&0);
    match (su, sv) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (x, y) if x == y => x,
        (su, _) => match (u * u).cmp(&(3 * v * v)) {
            Ordering::Greater => su,
            _ => su.reverse(),
        },
    }
}

/// Whether the foot `(3i + sgn·j√3) / (3q)` lies in `[lo, hi]`.
fn grid_foot_in(i: i128, j: i128, qd: i128, sgn: i128, lo: Q, hi: Q) -> bool {
    // compare (3i + sgn·j√3)/(3q) with n/d:  sign of (3i·d − 3q·n) + sgn·j·d·√3
    let cmp = |x: Q| sign_int_root3(3 * i * x.denom() - 3 * qd * x.numer(), sgn * j * x.denom());
    cmp(lo) != Ordering::Less && cmp(hi) != Ordering::Greater
}

fn grid_in_closure(system: &AxisSystem, i: i128, j: i128, qd: i128) -> bool {
    system.intervals.iter().any(|&(lo, hi)| {
        grid_foot_in(i, j, qd, -1, lo, hi) || grid_foot_in(i, j, qd, 1, lo, hi)
    })
}

/// Exhaustive search for a point in the closure of every system, over the
/// grid `(i/q, j/q)` with `1 ≤ q ≤ denominator_bound`.
///
/// A point in the closure of several systems has both feet inside the span
/// `[L, H]` of their hulls, so the grid covers `a ∈ [L, H]` and
/// `0 ≤ b ≤ √3·(H − L)/2`. Returns the first common point in grid order.
pub fn common_closure_grid_search(
    systems: &[AxisSystem],
    denominator_bound: u32,
) -> Option<BingPoint> {
    let (lo, hi) = systems.iter().filter_map(AxisSystem::span).fold(None, |acc, (l, h)| match acc {
        None => Some((l, h)),
        Some((al, ah)) => Some((l.min(al), h.max(ah))),
    })?;
    // 7/4 > √3
    let b_max = (hi - lo) * q(7, 8);
    for qd in 1..=denominator_bound as i128 {
        let qq = Q::from_integer(qd);
        let i_lo = (lo * qq).floor().to_integer();
        let i_hi = (hi * qq).ceil().to_integer();
        let j_hi = (b_max * qq).ceil().to_integer();
        for j in 0..=j_hi {
            for i in i_lo..=i_hi {
                if i.gcd(&j).gcd(&qd) != 1 {
                    continue;
                }
                if systems.iter().all(|s| grid_in_closure(s, i, j, qd)) {
                    let p = BingPoint { a: Q::new(i, qd), b: Q::new(j, qd) };
                    debug_assert!(systems.iter().all(|s| bing_closure_contains(s, &p)));
                    return Some(p);
                }
            }
        }
    }
    None
}

/// Three interval systems whose regular closed sets meet pairwise but not
/// all together, with the evidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmptyTriple {
    pub systems: [AxisSystem; 3],
    /// Witnesses for the pairs (0,1), (0,2), (1,2).
    pub pairwise: [BingPoint; 3],
    /// Closed hulls are pairwise disjoint: each point has two feet, so it can
    /// reach at most two of the three hulls.
    pub pigeonhole: bool,
    pub grid_denominator_bound: u32,
    /// A common point found on the grid, if any.
    pub grid_hit: Option<BingPoint>,
}

impl EmptyTriple {
    pub fn pairwise_verified(&self) -> bool {
        let pairs = [(0, 1), (0, 2), (1, 2)];
        pairs.iter().zip(&self.pairwise).all(|(&(i, j), p)| {
            p.b() > Q::zero()
                && bing_closure_contains(&self.systems[i], p)
                && bing_closure_contains(&self.systems[j], p)
        })
    }

    pub fn verified(&self) -> bool {
        self.pigeonhole && self.grid_hit.is_none() && self.pairwise_verified()
    }
}

/// Width-1 intervals centred at 0, 10 and 20.
pub fn empty_triple_systems() -> [AxisSystem; 3] {
    let iv = |c: i128| {
        AxisSystem::single(q(2 * c - 1, 2), q(2 * c + 1, 2)).expect("nonempty interval")
    };
    [iv(0), iv(10), iv(20)]
}

pub fn bing_empty_triple(grid_denominator_bound: u32) -> Result<EmptyTriple, BingError> {
    let systems = empty_triple_systems();
    let pairwise = [
        bing_au_witness(&systems[0], &systems[1])?,
        bing_au_witness(&systems[0], &systems[2])?,
        bing_au_witness(&systems[1], &systems[2])?,
    ];
    let pigeonhole = systems[0].hull_disjoint(&systems[1])
        && systems[0].hull_disjoint(&systems[2])
        && systems[1].hull_disjoint(&systems[2]);
    let grid_hit = common_closure_grid_search(&systems, grid_denominator_bound);
    Ok(EmptyTriple { systems, pairwise, pigeonhole, grid_denominator_bound, grid_hit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn sys(s: &str) -> AxisSystem {
        s.parse().unwrap()
    }

    fn pt(a: (i128, i128), b: (i128, i128)) -> BingPoint {
        BingPoint::new(q(a.0, a.1), q(b.0, b.1)).unwrap()
    }

    #[test]
    fn closure_examples() {
        let s = sys("[(3/10,1/2)]");
        assert!(bing_closure_contains(&s, &pt((1, 1), (1, 1))));
        assert!(bing_closure_contains(&s, &pt((2, 5), (0, 1))));
        assert!(!bing_closure_contains(&s, &pt((5, 1), (1, 1))));
        // endpoints belong to the closure
        assert!(bing_closure_contains(&s, &pt((1, 2), (0, 1))));
    }

    #[test]
    fn witness_examples() {
        let s1 = sys("[(-1/10,1/10)]");
        let s2 = sys("[(29/10,31/10)]");
        let p = bing_au_witness(&s1, &s2).unwrap();
        assert!(p.b() > Q::zero());
        assert_eq!(p.a(), q(3, 2));
        assert!(bing_closure_contains(&s1, &p) && bing_closure_contains(&s2, &p));

        let s = sys("[(0,1)]");
        let p = bing_au_witness(&s, &s).unwrap();
        assert!(p.b() > Q::zero());
        assert!(bing_closure_contains(&s, &p));

        assert_eq!(bing_au_witness(&AxisSystem::default(), &s), Err(BingError::EmptySystem));
    }

    #[test]
    fn system_normalization() {
        let s = sys("[(2,3),(0,1),(1/2,3/2)]");
        assert_eq!(s.to_string(), "[(0,3/2),(2,3)]");
        let touching = sys("[(0,1),(1,2)]");
        assert_eq!(touching.intervals().len(), 2);
        assert!("[(1,1)]".parse::<AxisSystem>().is_err());
        assert!(AxisSystem::new(vec![(q(2, 1), q(1, 1))]).is_err());
        assert_eq!(sys("[]"), AxisSystem::default());
    }

    #[test]
    fn triple_certificate() {
        let t = bing_empty_triple(6).unwrap();
        assert!(t.pigeonhole);
        assert!(t.pairwise_verified());
        assert_eq!(t.grid_hit, None);
        assert!(t.verified());
    }

    #[test]
    fn grid_search_finds_pairwise_points() {
        let [a, b, _] = empty_triple_systems();
        let hit = common_closure_grid_search(&[a.clone(), b.clone()], 4).unwrap();
        assert!(bing_closure_contains(&a, &hit) && bing_closure_contains(&b, &hit));
    }

    #[test]
    fn convergents_of_root3() {
        let c: Vec<Q> = sqrt3_convergents().take(6).collect();
        assert_eq!(c, vec![q(1, 1), q(2, 1), q(5, 3), q(7, 4), q(19, 11), q(26, 15)]);
    }

    #[test]
    fn negative_height_rejected() {
        assert!(BingPoint::new(q(0, 1), q(-1, 2)).is_err());
        assert_eq!("(1/2,3)".parse::<BingPoint>().unwrap().to_string(), "(1/2,3)");
    }
}
