//! Derived expectations recomputed by independent means: brute-force
//! neighbourhood search, the raw generator stream, and squared foot
//! inequalities.

use std::collections::BTreeMap;

use au_core::bing::{bing_au_witness, bing_empty_triple, AxisSystem};
use au_core::glue::{rc_intersection_witness, GlueOpen, GluePoint};
use au_core::reaping::sets::{evens, naturals, primes};
use au_core::reaping::split_all;
use au_core::star::{cohen_fragment, dyadicity_check, strongify_case1, strongify_case2, separation_check, Schedule};
use au_workbench::gen::{random_cells, rng};
use au_workbench::oracle::{bing_closure_oracle, cohen_bit, glue_closure_oracle};

fn open(s: &str) -> GlueOpen {
    s.parse().unwrap()
}

#[test]
fn documented_closures_by_oracle() {
    let cases = [
        ("Y{0:1}", 0, true),
        ("Y{3:0}", 3, false),
        ("Y{3:0}", 1, true),
        ("A(3;5)", 3, true),
    ];
    for (v, g, want) in cases {
        let v = open(v);
        assert_eq!(glue_closure_oracle(&v, g, 32), want, "{v} G:{g}");
        assert_eq!(v.closure_contains(&GluePoint::Glued(g)), want, "{v} G:{g}");
    }
}

/// The least γ from which on every glued point is in the closure, found by
/// the oracle, never exceeds the formula and is matched above it.
#[test]
fn documented_tail_bounds_by_oracle() {
    for (v, bound) in [("Y{0:1,4:0}", 5), ("Y{}", 0), ("A(2;6)", 7)] {
        let v = open(v);
        assert_eq!(v.closure_tail_bound().unwrap(), bound);
        for g in bound..64 {
            assert!(glue_closure_oracle(&v, g, 70), "{v} G:{g}");
        }
    }
    // below the bound membership is decided case by case
    let v = open("Y{0:1,4:0}");
    let below: Vec<bool> = (0..5).map(|g| glue_closure_oracle(&v, g, 32)).collect();
    assert_eq!(below, (0..5).map(|g| v.closure_contains(&GluePoint::Glued(g))).collect::<Vec<_>>());
    assert!(!below[4]);
}

#[test]
fn documented_intersection_witness() {
    let w = rc_intersection_witness(&[open("Y{0:1}"), open("Y{0:0}")]).unwrap();
    assert_eq!(w, GluePoint::Glued(1));
    assert!(glue_closure_oracle(&open("Y{0:1}"), 1, 32));
    assert!(glue_closure_oracle(&open("Y{0:0}"), 1, 32));
}

#[test]
fn five_small_opens_meet_below_ten() {
    let mut r = rng(77, 0);
    for _ in 0..50 {
        let opens: Vec<GlueOpen> = (0..5).map(|_| au_workbench::gen::random_open(&mut r, 10)).collect();
        let GluePoint::Glued(g) = rc_intersection_witness(&opens).unwrap() else { panic!("glued witness") };
        assert!(g <= 10);
        for v in &opens {
            assert!(glue_closure_oracle(v, g, 20), "{v} G:{g}");
        }
    }
}

#[test]
fn documented_dyadicity_count_from_raw_stream() {
    let f = cohen_fragment(64, 8, 42).unwrap();
    let s = random_cells(&mut rng(42, 0), 128, 32, 8);
    let eps = BTreeMap::from([(40, true), (50, false)]);
    let (count, ok) = dyadicity_check(&f, &s, &eps, 1).unwrap();
    // recount from the generator stream: A^1 at 40 and A^0 at 50
    let expected = s.iter().filter(|&&c| !cohen_bit(42, 8, 40, c) && cohen_bit(42, 8, 50, c)).count();
    assert_eq!(count, expected);
    assert!(ok);
    // a quarter of the cells, give or take binomial spread
    assert!((16..=48).contains(&count), "{count}");
    assert_eq!(dyadicity_check(&f, &s, &BTreeMap::new(), 1).unwrap().0, 128);
    assert!(!dyadicity_check(&f, &s, &eps, 129).unwrap().1);
}

#[test]
fn documented_case1_separation() {
    let f = cohen_fragment(64, 1, 3).unwrap();
    let g = strongify_case1(&f, &Schedule::from([((3, 5, 0), 37)])).unwrap();
    assert!(g.in_zero(37, (3, 0)) && !g.in_zero(37, (5, 0)));
    let sep = separation_check(&g, (3, 0), (5, 0), 30).unwrap().unwrap();
    // before 37 the table is untouched, so the raw stream decides
    let raw = (30..37).find(|&a| cohen_bit(3, 1, a, (3, 0)) != cohen_bit(3, 1, a, (5, 0)));
    assert_eq!(sep, raw.unwrap_or(37));
}

#[test]
fn documented_case2_classes_by_brute_force() {
    let (_, rep) = strongify_case2(&cohen_fragment(32, 4, 7).unwrap(), 8).unwrap();
    let cells: Vec<(usize, usize)> = (0..8).flat_map(|x| (0..4).map(move |z| (x, z))).collect();
    let trace = |c| (8..32).map(|a| cohen_bit(7, 4, a, c)).collect::<Vec<bool>>();
    let mut classes: BTreeMap<Vec<bool>, usize> = BTreeMap::new();
    for &c in &cells {
        *classes.entry(trace(c)).or_default() += 1;
    }
    assert!(classes.values().all(|&n| n <= 2));
    let mut sizes: Vec<usize> = classes.into_values().collect();
    let mut got = rep.class_sizes.clone();
    sizes.sort();
    got.sort();
    assert_eq!(got, sizes);
}

#[test]
fn documented_split_counts() {
    let d = split_all(&naturals(), &[evens(), primes()], 16, 64, None, "D").unwrap();
    for (i, c) in [evens(), primes()].iter().enumerate() {
        let window = c.first(64, 1 << 20);
        let inside = window.iter().filter(|x| d.is_inside(x)).count();
        let outside = window.iter().filter(|x| d.is_outside(x)).count();
        assert!(inside >= 16 && outside >= 16, "{}: {inside}/{outside}", c.name());
        assert_eq!(d.split_counts(i), (inside, outside));
    }
}

#[test]
fn bing_witnesses_by_squared_feet() {
    let s1: AxisSystem = "[(3/10,1/2),(2,3)]".parse().unwrap();
    let s2: AxisSystem = "[(-4,-3)]".parse().unwrap();
    let p = bing_au_witness(&s1, &s2).unwrap();
    assert!(bing_closure_oracle(&s1, &p) && bing_closure_oracle(&s2, &p));
    let t = bing_empty_triple(12).unwrap();
    for (k, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
        assert!(bing_closure_oracle(&t.systems[i], &t.pairwise[k]));
        assert!(bing_closure_oracle(&t.systems[j], &t.pairwise[k]));
    }
    assert!(t.grid_hit.is_none());
}

/// The grid search cross-checked against the squared-feet oracle on a
/// coarse grid.
#[test]
fn triple_grid_by_oracle() {
    let t = bing_empty_triple(1).unwrap();
    for qd in 1..=6i128 {
        for i in (-qd)..=(21 * qd) {
            for j in 0..=(19 * qd) {
                let p = au_core::bing::BingPoint::new(au_core::qroot3::q(i, qd), au_core::qroot3::q(j, qd)).unwrap();
                assert!(!t.systems.iter().all(|s| bing_closure_oracle(s, &p)), "{p}");
            }
        }
    }
}

