//! Points of the Cantor cube `{0,1}^ω` with eventually periodic tails, and
//! clopen boxes given by finite partial bit assignments.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::ParseError;

/// Periodic tail of a [`CubePoint`], starting right after the prefix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tail {
    /// 0, 0, 0, ...
    AllZero,
    /// 0, 1, 0, 1, ... with the first 0 at the first index past the prefix.
    Alt01,
}

impl Tail {
    /// Value of the tail `offset` positions past the prefix.
    #[inline]
    pub fn bit_at(self, offset: usize) -> bool {
        match self {
            Tail::AllZero => false,
            Tail::Alt01 => offset % 2 == 1,
        }
    }
}

/// A point of the Cantor cube: a finite prefix followed by a periodic tail.
///
/// Always held in canonical form (shortest prefix), so `==` is extensional
/// equality of bit sequences.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubePoint {
    prefix: Vec<bool>,
    tail: Tail,
}

/// Where a cube point sits relative to the dense set `Y` and the compact
/// sets `K_α = { x : x(α) = 1, x(β) = 0 for β > α }`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Class {
    InY,
    InK(usize),
    ZeroPoint,
}

impl CubePoint {
    pub fn new(prefix: Vec<bool>, tail: Tail) -> Self {
        let mut p = CubePoint { prefix, tail };
        p.canonicalize();
        p
    }

    /// Builds a point from a 0/1 slice.
    pub fn from_bits(bits: &[u8], tail: Tail) -> Self {
        Self::new(bits.iter().map(|&b| b != 0).collect(), tail)
    }

    fn canonicalize(&mut self) {
        match self.tail {
            Tail::AllZero => {
                while self.prefix.last() == Some(&false) {
                    self.prefix.pop();
                }
            }
            // Shifting an Alt01 tail back by one index changes its phase, so
            // the prefix can only shrink by a trailing `0,1` pair.
            Tail::Alt01 => {
                while self.prefix.len() >= 2 && self.prefix[self.prefix.len() - 2..] == [false, true] {
                    self.prefix.truncate(self.prefix.len() - 2);
                }
            }
        }
    }

    pub fn prefix(&self) -> &[bool] {
        &self.prefix
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    /// The bit at index `i`.
    #[inline]
    pub fn eval(&self, i: usize) -> bool {
        match self.prefix.get(i) {
            Some(&b) => b,
            None => self.tail.bit_at(i - self.prefix.len()),
        }
    }

    pub fn classify(&self) -> Class {
        match self.tail {
            Tail::Alt01 => Class::InY,
            // canonical: a nonempty prefix ends in 1
            Tail::AllZero => match self.prefix.len() {
                0 => Class::ZeroPoint,
                n => Class::InK(n - 1),
            },
        }
    }

    /// First index where the two points differ, if any.
    pub fn first_difference(&self, other: &CubePoint) -> Option<usize> {
        if self == other {
            return None;
        }
        // Past both prefixes the tails are either equal in phase or differ
        // within two steps.
        let bound = self.prefix.len().max(other.prefix.len()) + 2;
        (0..bound).find(|&i| self.eval(i) != other.eval(i))
    }
}

impl fmt::Display for CubePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.prefix {
            f.write_str(if b { "1" } else { "0" })?;
        }
        f.write_str(match self.tail {
            Tail::AllZero => "+zero",
            Tail::Alt01 => "+alt",
        })
    }
}

impl FromStr for CubePoint {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (bits, tail) = s.split_once('+').ok_or(ParseError::new("point", s))?;
        let tail = match tail {
            "zero" => Tail::AllZero,
            "alt" => Tail::Alt01,
            _ => return Err(ParseError::new("point tail", s)),
        };
        let prefix = bits
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(ParseError::new("point prefix", s)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CubePoint::new(prefix, tail))
    }
}

/// A basic clopen set of the cube: all points agreeing with a finite partial
/// assignment. The empty assignment is the whole cube.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClopenBox {
    assignments: BTreeMap<usize, bool>,
}

impl ClopenBox {
    pub fn whole() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, bool)>>(pairs: I) -> Self {
        ClopenBox { assignments: pairs.into_iter().collect() }
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        self.assignments.get(&i).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.assignments.iter().map(|(&i, &b)| (i, b))
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.assignments.keys().next_back().copied()
    }

    /// The box `Box(α; m)`: `α ↦ 1` and `β ↦ 0` for `α < β ≤ m`.
    pub fn glue_window(alpha: usize, m: usize) -> Self {
        let mut b = BTreeMap::new();
        b.insert(alpha, true);
        for beta in alpha + 1..=m {
            b.insert(beta, false);
        }
        ClopenBox { assignments: b }
    }

    pub fn contains(&self, p: &CubePoint) -> bool {
        self.iter().all(|(i, b)| p.eval(i) == b)
    }

    /// Whether the two boxes share a point.
    pub fn compatible(&self, other: &ClopenBox) -> bool {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        small.iter().all(|(i, b)| large.get(i).is_none_or(|c| c == b))
    }

    /// The box denoting the intersection, if nonempty.
    pub fn merge(&self, other: &ClopenBox) -> Option<ClopenBox> {
        let mut out = self.assignments.clone();
        for (i, b) in other.iter() {
            if *out.entry(i).or_insert(b) != b {
                return None;
            }
        }
        Some(ClopenBox { assignments: out })
    }

    /// A point of `Y` (tail `Alt01`) inside the box; unassigned prefix slots
    /// are filled with 0.
    pub fn dense_extend(&self) -> CubePoint {
        let len = self.max_index().map_or(0, |m| m + 1);
        let prefix = (0..len).map(|i| self.get(i).unwrap_or(false)).collect();
        CubePoint::new(prefix, Tail::Alt01)
    }
}

impl fmt::Display for ClopenBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (i, b)) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}:{}", i, b as u8)?;
        }
        f.write_str("}")
    }
}

impl FromStr for ClopenBox {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or(ParseError::new("box", s))?;
        let mut assignments = BTreeMap::new();
        for pair in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (i, b) = pair.split_once(':').ok_or(ParseError::new("box entry", s))?;
            let i: usize = i.trim().parse().map_err(|_| ParseError::new("box index", s))?;
            let b = match b.trim() {
                "0" => false,
                "1" => true,
                _ => return Err(ParseError::new("box bit", s)),
            };
            if assignments.insert(i, b).is_some_and(|old| old != b) {
                return Err(ParseError::new("box (conflicting entries)", s));
            }
        }
        Ok(ClopenBox { assignments })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn pt(s: &str) -> CubePoint {
        s.parse().unwrap()
    }

    fn bx(s: &str) -> ClopenBox {
        s.parse().unwrap()
    }

    #[test]
    fn eval_examples() {
        assert!(CubePoint::from_bits(&[1, 0], Tail::Alt01).eval(5));
        assert!(CubePoint::from_bits(&[1], Tail::AllZero).eval(0));
        assert!(!CubePoint::from_bits(&[], Tail::Alt01).eval(2));
    }

    #[test]
    fn box_contains_examples() {
        assert!(bx("{0:1,3:0}").contains(&pt("1+zero")));
        assert!(!bx("{2:1}").contains(&pt("+alt")));
        assert!(ClopenBox::whole().contains(&pt("0110+zero")));
    }

    #[test]
    fn compatibility_examples() {
        assert!(!bx("{2:1}").compatible(&bx("{2:0}")));
        assert!(bx("{0:1}").compatible(&bx("{5:0}")));
        assert!(bx("{0:1,4:0}").compatible(&bx("{4:0}")));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(pt("001+zero").classify(), Class::InK(2));
        assert_eq!(pt("1+alt").classify(), Class::InY);
        assert_eq!(pt("+zero").classify(), Class::ZeroPoint);
    }

    #[test]
    fn dense_extend_examples() {
        let p = bx("{1:1,4:0}").dense_extend();
        assert_eq!(p, CubePoint::from_bits(&[0, 1, 0, 0, 0], Tail::Alt01));
        assert_eq!(ClopenBox::whole().dense_extend(), pt("+alt"));
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(pt("1000+zero"), pt("1+zero"));
        assert_eq!(pt("0101+alt"), pt("+alt"));
        assert_eq!(pt("10101+alt").to_string(), "1+alt");
        // phase matters: 0 followed by alt is not alt
        assert_ne!(pt("0+alt"), pt("+alt"));
        assert_eq!(pt("0000+zero").to_string(), "+zero");
    }

    #[test]
    fn text_round_trip() {
        for s in ["10+alt", "001+zero", "+alt", "+zero"] {
            assert_eq!(pt(s).to_string(), s);
        }
        assert_eq!(bx("{3:0, 0:1}").to_string(), "{0:1,3:0}");
        assert_eq!(bx("{}").to_string(), "{}");
        assert!("{1:2}".parse::<ClopenBox>().is_err());
        assert!("{1:1,1:0}".parse::<ClopenBox>().is_err());
        assert!("10+maybe".parse::<CubePoint>().is_err());
        assert!("12+alt".parse::<CubePoint>().is_err());
    }

    #[test]
    fn glue_window_shape() {
        let b = ClopenBox::glue_window(2, 5);
        assert_eq!(b.to_string(), "{2:1,3:0,4:0,5:0}");
    }

    #[test]
    fn membership_in_k_exhaustive() {
        // every prefix of length <= 10 under both tails
        for len in 0..=10usize {
            for mask in 0u32..(1 << len) {
                let bits: Vec<bool> = (0..len).map(|i| mask >> i & 1 == 1).collect();
                let alt = CubePoint::new(bits.clone(), Tail::Alt01);
                assert_eq!(alt.classify(), Class::InY);
                let z = CubePoint::new(bits.clone(), Tail::AllZero);
                let ones: Vec<usize> = (0..len).filter(|&i| bits[i]).collect();
                // membership in K_α straight from its definition
                let in_k: Vec<usize> = (0..len + 2)
                    .filter(|&a| z.eval(a) && (a + 1..len + 4).all(|b| !z.eval(b)))
                    .collect();
                match ones.last() {
                    None => {
                        assert_eq!(z.classify(), Class::ZeroPoint);
                        assert!(in_k.is_empty());
                    }
                    Some(&a) => {
                        assert_eq!(z.classify(), Class::InK(a));
                        assert_eq!(in_k, vec![a]);
                    }
                }
            }
        }
    }

    #[test]
    fn first_difference_finds_index() {
        assert_eq!(pt("1+alt").first_difference(&pt("0+alt")), Some(0));
        assert_eq!(pt("+alt").first_difference(&pt("+zero")), Some(1));
        assert_eq!(pt("+alt").first_difference(&pt("+alt")), None);
        assert_eq!(pt("0+alt").first_difference(&pt("+alt")), Some(1));
    }
}
