//! Exact arithmetic in `ℚ(√3)`.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::ParseError;

/// Rationals used throughout the Bing model.
pub type Q = Ratio<i128>;

pub fn q(n: i128, d: i128) -> Q {
    Ratio::new(n, d)
}

pub fn parse_q(s: &str) -> Result<Q, ParseError> {
    let s = s.trim();
    let bad = || ParseError::new("rational", s);
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i128 = n.trim().parse().map_err(|_| bad())?;
            let d: i128 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Ratio::new(n, d))
        }
        None => s.parse::<i128>().map(Ratio::from_integer).map_err(|_| bad()),
    }
}

/// `a + b·√3` with rational `a`, `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QRoot3 {
    pub a: Q,
    pub b: Q,
}

impl QRoot3 {
    pub const fn new(a: Q, b: Q) -> Self {
        QRoot3 { a, b }
    }

    pub fn rational(a: Q) -> Self {
        QRoot3 { a, b: Q::zero() }
    }

    /// Sign of the denoted real, decided by squaring; never uses floats.
    pub fn signum(&self) -> Ordering {
        let (a, b) = (self.a, self.b);
        let sa = a.cmp(&Q::zero());
        let sb = b.cmp(&Q::zero());
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (x, y) if x == y => x,
            // opposite signs: compare a² with 3b²
            (sa, _) => match (a * a).cmp(&(Q::from_integer(3) * b * b)) {
                Ordering::Greater => sa,
                Ordering::Less => sa.reverse(),
                Ordering::Equal => unreachable!("√3 is irrational"),
            },
        }
    }

    /// Nearest `f64` approximation; for screening only, never for decisions.
    pub fn approx(&self) -> f64 {
        ratio_to_f64(self.a) + ratio_to_f64(self.b) * 1.732_050_807_568_877_2
    }
}

pub(crate) fn ratio_to_f64(r: Q) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

impl Ord for QRoot3 {
    fn cmp(&self, other: &Self) -> Ordering {
        (*self - *other).signum()
    }
}

impl PartialOrd for QRoot3 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact ordering of two elements of `ℚ(√3)`.
pub fn qr3_cmp(x: &QRoot3, y: &QRoot3) -> Ordering {
    x.cmp(y)
}

impl Add for QRoot3 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        QRoot3::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for QRoot3 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        QRoot3::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Neg for QRoot3 {
    type Output = Self;
    fn neg(self) -> Self {
        QRoot3::new(-self.a, -self.b)
    }
}

impl Mul for QRoot3 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let three = Q::from_integer(3);
        QRoot3::new(self.a * rhs.a + three * self.b * rhs.b, self.a * rhs.b + self.b * rhs.a)
    }
}

impl fmt::Display for QRoot3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let sign = if self.b.is_negative() { "-" } else { "+" };
        write!(f, "{} {} {}√3", self.a, sign, self.b.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cmp_examples() {
        let x = QRoot3::new(q(1, 1), q(-1, 3));
        assert_eq!(qr3_cmp(&x, &QRoot3::rational(q(3, 10))), Ordering::Greater);
        assert_eq!(qr3_cmp(&x, &QRoot3::rational(q(1, 2))), Ordering::Less);
        assert_eq!(qr3_cmp(&x, &x), Ordering::Equal);
    }

    #[test]
    fn signs() {
        assert_eq!(QRoot3::new(q(2, 1), q(-1, 1)).signum(), Ordering::Greater);
        assert_eq!(QRoot3::new(q(-2, 1), q(1, 1)).signum(), Ordering::Less);
        assert_eq!(QRoot3::new(q(-7, 4), q(1, 1)).signum(), Ordering::Less);
        assert_eq!(QRoot3::new(q(-7, 4), q(0, 1)).signum(), Ordering::Less);
        assert_eq!(QRoot3::new(q(0, 1), q(0, 1)).signum(), Ordering::Equal);
    }

    #[test]
    fn multiplication_by_conjugate_is_rational() {
        let x = QRoot3::new(q(2, 1), q(1, 1));
        let conj = QRoot3::new(q(2, 1), q(-1, 1));
        assert_eq!(x * conj, QRoot3::rational(q(1, 1)));
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_q("3/10").unwrap(), q(3, 10));
        assert_eq!(parse_q("-2").unwrap(), q(-2, 1));
        assert_eq!(parse_q("6/4").unwrap(), q(3, 2));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }
}
