//! Seeded generators for every sweep. Each sweep draws from its own stream so
//! that changing one count does not perturb the others.

use au_core::bing::AxisSystem;
use au_core::glue::{GlueOpen, GluePoint, Generator};
use au_core::points::{ClopenBox, CubePoint, Tail};
use au_core::qroot3::{q, Q};
use au_core::star::{Cell, Selector};
use rand::seq::index;
use rand::Rng;
use rand_xoshiro::rand_core::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;

pub type SeededRng = Xoshiro256PlusPlus;

/// Independent stream `stream` of the run seeded by `seed`.
pub fn rng(seed: u64, stream: u64) -> SeededRng {
    let mut r = Xoshiro256PlusPlus::seed_from_u64(seed);
    for _ in 0..stream {
        r.jump();
    }
    r
}

/// Box with up to `max_len` assignments, all indices below `bound`.
pub fn random_box(rng: &mut SeededRng, bound: usize, max_len: usize) -> ClopenBox {
    let len = rng.random_range(0..=max_len.min(bound));
    let idx = index::sample(rng, bound, len);
    ClopenBox::from_pairs(idx.into_iter().map(|i| (i, rng.random_bool(0.5))).collect::<Vec<_>>())
}

/// Nonempty open with one to three generators whose boxes live in `[0, bound)`.
pub fn random_open(rng: &mut SeededRng, bound: usize) -> GlueOpen {
    let n = rng.random_range(1..=3);
    let gens = (0..n)
        .map(|_| {
            if bound >= 2 && rng.random_bool(0.3) {
                let alpha = rng.random_range(0..bound - 1);
                let m = rng.random_range(alpha + 1..bound);
                Generator::A { alpha, m }
            } else {
                // nonempty domains keep most tail bounds above zero
                let b = random_box(rng, bound, 4);
                Generator::Y(b)
            }
        })
        .collect();
    GlueOpen::new(gens).expect("generated opens are well formed")
}

/// Point of `Y`: random prefix of length below `max_prefix`, alternating tail.
pub fn random_y_point(rng: &mut SeededRng, max_prefix: usize) -> CubePoint {
    let len = rng.random_range(0..max_prefix.max(1));
    CubePoint::new((0..len).map(|_| rng.random_bool(0.5)).collect(), Tail::Alt01)
}

/// A point of `Y` inside `b`: the gaps below its largest index plus a few
/// more bits are filled at random.
pub fn random_point_in(rng: &mut SeededRng, b: &ClopenBox) -> CubePoint {
    let len = b.max_index().map_or(0, |m| m + 1) + rng.random_range(0..4);
    let prefix = (0..len).map(|i| b.get(i).unwrap_or_else(|| rng.random_bool(0.5))).collect();
    CubePoint::new(prefix, Tail::Alt01)
}

pub fn random_glue_point(rng: &mut SeededRng, bound: usize) -> GluePoint {
    if rng.random_bool(0.25) {
        GluePoint::Glued(rng.random_range(0..bound))
    } else {
        GluePoint::Y(random_y_point(rng, bound))
    }
}

fn random_q(rng: &mut SeededRng, lo: i128, hi: i128, max_den: i128) -> Q {
    let d = rng.random_range(1..=max_den);
    q(rng.random_range(lo * d..=hi * d), d)
}

/// One to three rational intervals inside `[-20, 20]`.
pub fn random_axis_system(rng: &mut SeededRng) -> AxisSystem {
    let n = rng.random_range(1..=3);
    let iv = (0..n)
        .map(|_| {
            let lo = random_q(rng, -20, 19, 12);
            let width = random_q(rng, 0, 4, 12) + q(1, 16);
            (lo, lo + width)
        })
        .collect();
    AxisSystem::new(iv).expect("positive widths")
}

/// `count` distinct cells of `rows × m`, in cell order.
pub fn random_cells(rng: &mut SeededRng, count: usize, rows: usize, m: usize) -> Vec<Cell> {
    let mut v: Vec<Cell> = index::sample(rng, rows * m, count).into_iter().map(|k| (k / m, k % m)).collect();
    v.sort();
    v
}

/// Selector with one to `max_depth` indices in `[lo, hi)`.
pub fn random_selector(rng: &mut SeededRng, lo: usize, hi: usize, max_depth: usize) -> Selector {
    let span = hi - lo;
    let n = rng.random_range(1..=max_depth.min(span).max(1)).min(span);
    index::sample(rng, span, n).into_iter().map(|k| (lo + k, rng.random_bool(0.5))).collect()
}

/// Ground size in `[1, max_ground]` and up to `max_members` random members.
pub fn random_family(rng: &mut SeededRng, max_ground: usize, max_members: usize) -> (usize, Vec<Vec<bool>>) {
    let n = rng.random_range(1..=max_ground);
    let k = rng.random_range(0..=max_members);
    let fam = (0..k)
        .map(|_| {
            let p = rng.random_range(1..10) as f64 / 10.0;
            (0..n).map(|_| rng.random_bool(p)).collect()
        })
        .collect();
    (n, fam)
}
