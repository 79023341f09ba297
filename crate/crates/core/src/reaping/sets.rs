//! Built-in ground sets and predicate sets.

use alloc::boxed::Box;
use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec::Vec;

use core::cmp::Ordering;
use core::fmt;

use super::EnumSet;

pub fn naturals() -> EnumSet<u64> {
    EnumSet::generated("N", |n| n, |_| true)
}

pub fn evens() -> EnumSet<u64> {
    progression(0, 2).renamed("evens")
}

pub fn odds() -> EnumSet<u64> {
    progression(1, 2).renamed("odds")
}

/// `{start + k·step : k ∈ ℕ}`.
pub fn progression(start: u64, step: u64) -> EnumSet<u64> {
    assert!(step > 0, "progression step must be positive");
    EnumSet::generated(
        &format!("AP({start},{step})"),
        move |k| start + k * step,
        move |&x| x >= start && (x - start).is_multiple_of(step),
    )
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes() -> EnumSet<u64> {
    EnumSet::from_stream(
        "primes",
        || Box::new((0u64..).map(|n| is_prime(n).then_some(n))),
        |&x| is_prime(x),
    )
}

impl<E: Clone + Ord + 'static> EnumSet<E> {
    pub fn renamed(&self, name: &str) -> Self {
        let mut s = self.clone();
        s.name = name.into();
        s
    }
}

/// A nonnegative fraction in lowest terms, ordered by value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Frac {
    num: u64,
    den: u64,
}

impl Frac {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        let g = gcd(num, den);
        Frac { num: num / g, den: den / g }
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

impl Ord for Frac {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Frac {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Breadth-first Stern–Brocot order of `ℚ ∩ (0,1)`:
/// `1/2, 1/3, 2/3, 1/4, 2/5, 3/5, 3/4, …`.
pub fn stern_brocot_iter() -> impl Iterator<Item = Frac> {
    // each node is the mediant of its bounds (a/b, c/d)
    let mut queue: VecDeque<(u64, u64, u64, u64)> = VecDeque::from([(0, 1, 1, 1)]);
    core::iter::from_fn(move || {
        let (a, b, c, d) = queue.pop_front()?;
        let (m, n) = (a + c, b + d);
        queue.push_back((a, b, m, n));
        queue.push_back((m, n, c, d));
        // mediants of Stern–Brocot neighbours are already in lowest terms
        Some(Frac { num: m, den: n })
    })
}

/// The rationals of `(0,1)` in Stern–Brocot order.
pub fn unit_rationals() -> EnumSet<Frac> {
    EnumSet::from_stream(
        "Q(0,1)",
        || Box::new(stern_brocot_iter().map(Some)),
        |x| x.num > 0 && x.num < x.den,
    )
}

/// `{1/(n+2)}`.
pub fn reciprocals() -> EnumSet<Frac> {
    EnumSet::generated("reciprocals", |n| Frac::new(1, n + 2), |x| x.num == 1 && x.den >= 2)
}

/// `{1 − 1/(n+2)}`.
pub fn co_reciprocals() -> EnumSet<Frac> {
    EnumSet::generated(
        "co-reciprocals",
        |n| Frac::new(n + 1, n + 2),
        |x| x.den >= 2 && x.den - x.num == 1,
    )
}

/// Rationals of `(0,1)` strictly between `lo` and `hi`, in Stern–Brocot order.
pub fn open_interval(lo: Frac, hi: Frac) -> EnumSet<Frac> {
    unit_rationals().filter(&format!("({lo},{hi})"), move |x| lo < *x && *x < hi)
}

/// Open dyadic intervals `(k/2^j, (k+1)/2^j)` of `(0,1)` for `j ≤ max_level`.
pub fn dyadic_intervals(max_level: u32) -> Vec<EnumSet<Frac>> {
    let mut out = Vec::new();
    for j in 0..=max_level {
        let den = 1u64 << j;
        for k in 0..den {
            out.push(open_interval(Frac::new(k, den), Frac::new(k + 1, den)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reaping::raw_limit;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn stern_brocot_prefix() {
        let v: Vec<Frac> = stern_brocot_iter().take(7).collect();
        let f = Frac::new;
        assert_eq!(v, vec![f(1, 2), f(1, 3), f(2, 3), f(1, 4), f(2, 5), f(3, 5), f(3, 4)]);
    }

    #[test]
    fn stern_brocot_is_injective() {
        let mut v: Vec<Frac> = stern_brocot_iter().take(4095).collect();
        v.sort();
        v.dedup();
        assert_eq!(v.len(), 4095);
    }

    #[test]
    fn builtins_agree_with_membership() {
        for s in [evens(), odds(), primes(), progression(3, 7)] {
            for x in s.first(50, raw_limit(50)) {
                assert!(s.contains(&x));
            }
        }
        for s in [reciprocals(), co_reciprocals(), open_interval(Frac::new(1, 8), Frac::new(1, 4))] {
            for x in s.first(50, raw_limit(50)) {
                assert!(s.contains(&x), "{} {x}", s.name());
            }
        }
        assert_eq!(primes().first(6, 100), vec![2, 3, 5, 7, 11, 13]);
        assert!(!reciprocals().contains(&Frac::new(2, 3)));
        assert!(co_reciprocals().contains(&Frac::new(4, 6)));
        assert!(Frac::new(1, 3) < Frac::new(2, 5));
        assert_eq!(Frac::new(6, 4).to_string(), "3/2");
    }

    #[test]
    fn dyadic_intervals_width_eighth() {
        let v = dyadic_intervals(3);
        assert_eq!(v.len(), 15);
        // the sparsest interval still yields plenty of elements
        for s in &v {
            assert!(s.take_productive(128).is_ok(), "{}", s.name());
        }
    }
}
