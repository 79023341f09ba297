use au_core::glue::{hausdorff_witness, rc_intersection_witness, symbolically_disjoint, GlueOpen, GluePoint};
use rand::Rng;
use serde::Serialize;

use crate::args::CantorArgs;
use crate::gen::{self, SeededRng};
use crate::oracle::glue_closure_oracle;
use crate::report::{Check, Report, Sweep};

#[derive(Clone, Debug, Serialize)]
pub struct Instance {
    pub opens: Vec<String>,
    pub witness: Option<String>,
    pub tail_bounds: Vec<usize>,
    pub verified: bool,
}

pub fn random_opens(rng: &mut SeededRng, count: usize, bound: usize) -> Vec<GlueOpen> {
    (0..count).map(|_| gen::random_open(rng, bound)).collect()
}

/// Tuples of size `2..=arity` (or 1 when `arity == 1`).
pub fn random_tuples(rng: &mut SeededRng, count: usize, arity: usize, bound: usize) -> Vec<Vec<GlueOpen>> {
    (0..count)
        .map(|_| {
            let k = if arity == 1 { 1 } else { rng.random_range(2..=arity) };
            random_opens(rng, k, bound)
        })
        .collect()
}

/// Witness for a tuple, checked by the closure rule and by the oracle.
pub fn intersection_instance(opens: &[GlueOpen], bound: usize) -> Instance {
    let tail_bounds: Vec<usize> = opens.iter().map(|v| v.closure_tail_bound().unwrap_or(0)).collect();
    let w = rc_intersection_witness(opens);
    let verified = match &w {
        Ok(p @ GluePoint::Glued(g)) => {
            let limit = bound.max(*g + 1) + 4;
            g == tail_bounds.iter().max().unwrap_or(&0)
                && opens.iter().all(|v| v.closure_contains(p) && glue_closure_oracle(v, *g, limit))
        }
        _ => false,
    };
    Instance {
        opens: opens.iter().map(ToString::to_string).collect(),
        witness: w.ok().map(|p| p.to_string()),
        tail_bounds,
        verified,
    }
}

/// Every glued `γ ∈ [tail bound, gamma_bound)` lies in the closure.
pub fn final_segment_sweep(opens: &[GlueOpen], gamma_bound: usize) -> Sweep {
    let mut s = Sweep::default();
    for v in opens {
        let Ok(n) = v.closure_tail_bound() else {
            s.record(false, || format!("{v}: no tail bound"));
            continue;
        };
        for g in n..gamma_bound {
            s.record(v.closure_contains(&GluePoint::Glued(g)), || format!("{v}: G:{g} missing"));
        }
    }
    s
}

/// The closure rule against the canonical-neighbourhood oracle on
/// `γ < bound + 4`, and on Y against plain membership.
pub fn oracle_sweep(opens: &[GlueOpen], bound: usize, rng: &mut SeededRng, y_samples: usize) -> Sweep {
    let limit = bound + 4;
    let mut s = Sweep::default();
    for v in opens {
        for g in 0..limit {
            let p = GluePoint::Glued(g);
            let (rule, oracle) = (v.closure_contains(&p), glue_closure_oracle(v, g, limit));
            s.record(rule == oracle, || format!("{v}: G:{g} rule={rule} oracle={oracle}"));
        }
        for _ in 0..y_samples {
            let p = GluePoint::Y(gen::random_y_point(rng, bound + 4));
            s.record(v.closure_contains(&p) == v.contains(&p), || format!("{v}: {p}"));
        }
    }
    s
}

/// Hausdorff witnesses for every pair drawn from the glued points `0..glued`
/// and `ys` seeded points of Y, with sampled common-member search.
pub fn hausdorff_sweep(rng: &mut SeededRng, glued: usize, ys: usize, samples: usize, bound: usize) -> Sweep {
    let mut points: Vec<GluePoint> = (0..glued).map(GluePoint::Glued).collect();
    while points.len() < glued + ys {
        let p = GluePoint::Y(gen::random_y_point(rng, bound.max(8)));
        if !points.contains(&p) {
            points.push(p);
        }
    }
    let mut s = Sweep::default();
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            let Ok((u, v)) = hausdorff_witness(p, q) else {
                s.record(false, || format!("{p} / {q}: no witness"));
                continue;
            };
            let ok = u.contains(p) && v.contains(q) && symbolically_disjoint(&u, &v);
            let common = sample_common(rng, &u, &v, samples, bound);
            s.record(ok && common.is_none(), || match common {
                Some(x) => format!("{p} / {q}: {u} and {v} share {x}"),
                None => format!("{p} / {q}: {u} and {v} not certified"),
            });
        }
    }
    s
}

/// Sampled points, half of them aimed inside the generators of `u` or `v`.
fn sample_common(rng: &mut SeededRng, u: &GlueOpen, v: &GlueOpen, n: usize, bound: usize) -> Option<GluePoint> {
    let boxes: Vec<_> = u.trace_boxes().chain(v.trace_boxes()).collect();
    let glued = u.glued_points().chain(v.glued_points()).map(GluePoint::Glued);
    let sampled = (0..n).map(|k| {
        if k % 2 == 0 || boxes.is_empty() {
            gen::random_glue_point(rng, 2 * bound + 8)
        } else {
            let b = &boxes[rng.random_range(0..boxes.len())];
            GluePoint::Y(gen::random_point_in(rng, b))
        }
    });
    glued.collect::<Vec<_>>().into_iter().chain(sampled).find(|x| u.contains(x) && v.contains(x))
}

#[derive(Serialize)]
struct Config {
    seed: u64,
    pairs: usize,
    arity: usize,
    index_bound: usize,
    gamma_bound: usize,
    glued_points: usize,
    y_points: usize,
    samples: usize,
}

pub fn run(a: &CantorArgs) -> Report {
    let seed = a.common.seed;
    let mut report = Report::new(
        "cantor",
        Config {
            seed,
            pairs: a.pairs,
            arity: a.arity,
            index_bound: a.index_bound,
            gamma_bound: a.gamma_bound,
            glued_points: a.glued_points,
            y_points: a.y_points,
            samples: a.samples,
        },
    );
    let tuples = random_tuples(&mut gen::rng(seed, 0), a.pairs, a.arity, a.index_bound);
    let instances: Vec<Instance> = tuples.iter().map(|t| intersection_instance(t, a.index_bound)).collect();
    let bad = instances.iter().filter(|i| !i.verified).count();
    report.check(Check::count("intersection witnesses", instances.len(), bad));

    let opens: Vec<GlueOpen> = tuples.into_iter().flatten().collect();
    let fs = final_segment_sweep(&opens, a.gamma_bound);
    report.check(fs.check("final segment"));
    let os = oracle_sweep(&opens, a.index_bound, &mut gen::rng(seed, 1), 16);
    report.check(os.check("closure oracle agreement"));
    let hs = hausdorff_sweep(&mut gen::rng(seed, 2), a.glued_points, a.y_points, a.samples, a.index_bound);
    report.check(hs.check("hausdorff witnesses"));

    report.section("instances", instances);
    report.section("final_segment", fs);
    report.section("oracle", os);
    report.section("hausdorff", hs);
    report
}
