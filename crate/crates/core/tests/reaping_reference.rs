use std::collections::BTreeMap;

use au_core::reaping::sets::{co_reciprocals, Frac, dyadic_intervals, reciprocals, unit_rationals};
use au_core::reaping::{raw_limit, run_one_step, ExtensionResult, OneStep, ReapConfig};

fn reference() -> (ExtensionResult<Frac>, au_core::reaping::EnumSet<Frac>, au_core::reaping::EnumSet<Frac>) {
    let ground = unit_rationals();
    let (i, j) = (reciprocals(), co_reciprocals());
    let base = dyadic_intervals(3);
    let input = OneStep { ground: &ground, i: &i, j: &j, pairs: &[], base: &base };
    let r = run_one_step(&input, 4, ReapConfig { budget: 16, rounds: 512 }, 0).unwrap();
    (r, i, j)
}

fn all_selectors(stages: usize, depth: usize) -> Vec<BTreeMap<usize, bool>> {
    let mut out = vec![BTreeMap::new()];
    for mask in 1u32..(1 << stages) {
        let dom: Vec<usize> = (0..stages).filter(|n| mask >> n & 1 == 1).collect();
        if dom.len() > depth {
            continue;
        }
        for bits in 0u32..(1 << dom.len()) {
            out.push(dom.iter().enumerate().map(|(k, &n)| (n, bits >> k & 1 == 1)).collect());
        }
    }
    out
}

#[test]
fn reference_instance_invariants() {
    let (r, i, j) = reference();
    assert_eq!(r.ladders.len(), 4);
    assert!(r.all_stages_ok(), "{:#?}", r.stages);
    for (m, d) in r.ladders.iter().enumerate() {
        let u_m = au_core::reaping::sets::stern_brocot_iter().nth(m).unwrap();
        assert!(!d.is_inside(&u_m));
    }
    // family recursion
    for w in r.stages.windows(2) {
        assert_eq!(w[1].family_size, w[0].family_size + w[0].pieces_kept);
    }
    assert!(r.closure_progress(&i, 8, 512));
    assert!(r.closure_progress(&j, 8, 512));
    let selectors = all_selectors(4, 3);
    for c in &r.initial_family {
        let prefix = c.first(512, raw_limit(512));
        for eps in &selectors {
            assert!(r.count_trace_in(&prefix, eps) >= 1, "{} {:?}", c.name(), eps);
        }
    }
}
