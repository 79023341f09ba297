//! Brute-force and alternative-route checks used to cross-examine the exact
//! decision procedures.

use au_core::bing::{AxisSystem, BingPoint};
use au_core::glue::{GlueOpen, GluePoint};
use au_core::points::ClopenBox;
use au_core::qroot3::Q;
use au_core::star::{Cell, StarFragment};
use num_rational::Ratio;

/// Whether the canonical neighbourhood `{γ} ∪ (Box(γ;m) ∩ Y)` meets `v`,
/// decided by building an explicit common point.
pub fn canonical_meets(v: &GlueOpen, gamma: usize, m: usize) -> bool {
    if v.contains(&GluePoint::Glued(gamma)) {
        return true;
    }
    let window = ClopenBox::glue_window(gamma, m);
    v.trace_boxes().any(|b| match b.merge(&window) {
        Some(merged) => {
            let x = merged.dense_extend();
            window.contains(&x) && b.contains(&x)
        }
        None => false,
    })
}

/// `γ ∈ cl(v)` iff every canonical neighbourhood `AGen(γ, m)`,
/// `γ < m ≤ limit`, meets `v`.
pub fn glue_closure_oracle(v: &GlueOpen, gamma: usize, limit: usize) -> bool {
    (gamma + 1..=limit).all(|m| canonical_meets(v, gamma, m))
}

/// Closure membership for Bing's space through the squared foot inequalities
/// `lo ≤ a ∓ b/√3 ≤ hi`, without going through `ℚ(√3)`.
pub fn bing_closure_oracle(system: &AxisSystem, p: &BingPoint) -> bool {
    let (a, b) = (p.a(), p.b());
    let three = Ratio::from_integer(3);
    let zero = Q::from_integer(0);
    let b2 = b * b;
    // s ≤ b/√3 with b ≥ 0
    let le_root = |s: Q| s <= zero || three * s * s <= b2;
    // s ≥ b/√3
    let ge_root = |s: Q| s >= zero && three * s * s >= b2;
    system.intervals().iter().any(|&(lo, hi)| {
        let left = ge_root(a - lo) && le_root(a - hi);
        let right = le_root(lo - a) && ge_root(hi - a);
        left || right
    })
}

/// The fragment's bits re-derived from the raw generator stream.
pub fn cohen_bit(k_seed: u64, m: usize, beta: usize, (xi, zeta): Cell) -> bool {
    use rand_xoshiro::rand_core::{RngCore, SeedableRng};
    let mut r = rand_xoshiro::Xoshiro256PlusPlus::seed_from_u64(k_seed);
    let before: usize = (0..beta).map(|b| b * m).sum::<usize>() + xi * m + zeta;
    for _ in 0..before {
        r.next_u64();
    }
    r.next_u64() >> 63 == 0
}

/// Cells equivalent on the tail `[cutoff, K)`.
pub fn tail_equivalent(f: &StarFragment, a: Cell, b: Cell, cutoff: usize) -> bool {
    (cutoff..f.k()).all(|z| f.in_zero(z, a) == f.in_zero(z, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use au_core::bing::bing_closure_contains;
    use au_core::glue::{Generator, GlueOpen};
    use au_core::qroot3::q;

    #[test]
    fn oracle_on_documented_opens() {
        let v: GlueOpen = "Y{0:1}".parse().unwrap();
        assert!(glue_closure_oracle(&v, 0, 32));
        let v: GlueOpen = "Y{3:0}".parse().unwrap();
        assert!(!glue_closure_oracle(&v, 3, 32));
        assert!(glue_closure_oracle(&v, 1, 32));
        let v = GlueOpen::new(vec![Generator::A { alpha: 2, m: 6 }]).unwrap();
        for g in 7..64 {
            assert!(glue_closure_oracle(&v, g, 64));
        }
    }

    #[test]
    fn bing_oracle_matches_on_axis_grid() {
        let s = AxisSystem::new(vec![(q(3, 10), q(1, 2)), (q(2, 1), q(3, 1))]).unwrap();
        for i in -10..40 {
            for j in 0..30 {
                let p = BingPoint::new(q(i, 8), q(j, 8)).unwrap();
                assert_eq!(bing_closure_oracle(&s, &p), bing_closure_contains(&s, &p), "{p}");
            }
        }
    }

    #[test]
    fn cohen_bits_match_fragment() {
        let f = au_core::star::cohen_fragment(6, 3, 42).unwrap();
        for beta in 0..6 {
            for xi in 0..beta {
                for zeta in 0..3 {
                    assert_eq!(f.in_zero(beta, (xi, zeta)), cohen_bit(42, 3, beta, (xi, zeta)));
                }
            }
        }
    }
}
