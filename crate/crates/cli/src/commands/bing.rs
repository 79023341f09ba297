use au_core::bing::{bing_au_witness, bing_closure_contains, bing_empty_triple, AxisSystem, BingPoint, EmptyTriple};
use au_core::qroot3::Q;
use num_rational::Ratio;
use serde::Serialize;

use crate::args::BingArgs;
use crate::gen::{self, SeededRng};
use crate::oracle::bing_closure_oracle;
use crate::report::{Check, Report, Sweep};

#[derive(Clone, Debug, Serialize)]
pub struct PairWitness {
    pub systems: [String; 2],
    pub witness: Option<String>,
    pub verified: bool,
}

fn in_both(s1: &AxisSystem, s2: &AxisSystem, p: &BingPoint) -> bool {
    [s1, s2].iter().all(|s| bing_closure_contains(s, p) && bing_closure_oracle(s, p))
}

pub fn pairwise_sweep(rng: &mut SeededRng, count: usize) -> Vec<PairWitness> {
    (0..count)
        .map(|_| {
            let s1 = gen::random_axis_system(rng);
            let s2 = gen::random_axis_system(rng);
            let w = bing_au_witness(&s1, &s2);
            PairWitness {
                systems: [s1.to_string(), s2.to_string()],
                verified: w.as_ref().is_ok_and(|p| in_both(&s1, &s2, p)),
                witness: w.ok().map(|p| p.to_string()),
            }
        })
        .collect()
}

/// Independent pigeonhole certificate: the three closed hulls are pairwise
/// disjoint, so the two feet of any point reach at most two of them.
pub fn pigeonhole_holds(systems: &[AxisSystem; 3]) -> bool {
    let hulls: Vec<Vec<(Q, Q)>> = systems.iter().map(|s| s.intervals().to_vec()).collect();
    let disjoint = |a: &[(Q, Q)], b: &[(Q, Q)]| a.iter().all(|x| b.iter().all(|y| x.1 < y.0 || y.1 < x.0));
    (0..3).all(|i| (i + 1..3).all(|j| disjoint(&hulls[i], &hulls[j])))
}

#[derive(Clone, Debug, Serialize)]
pub struct TripleReport {
    pub systems: Vec<String>,
    pub pairwise: Vec<String>,
    pub pairwise_verified: bool,
    pub pigeonhole: bool,
    pub grid_hit: Option<String>,
    pub triple_empty: bool,
}

pub fn triple_report(t: &EmptyTriple) -> TripleReport {
    let pairs = [(0, 1), (0, 2), (1, 2)];
    let oracle_ok = pairs.iter().zip(&t.pairwise).all(|(&(i, j), p)| {
        p.b() > Ratio::from_integer(0) && in_both(&t.systems[i], &t.systems[j], p)
    });
    let pigeonhole = t.pigeonhole && pigeonhole_holds(&t.systems);
    TripleReport {
        systems: t.systems.iter().map(ToString::to_string).collect(),
        pairwise: t.pairwise.iter().map(ToString::to_string).collect(),
        pairwise_verified: t.pairwise_verified() && oracle_ok,
        pigeonhole,
        grid_hit: t.grid_hit.as_ref().map(ToString::to_string),
        triple_empty: t.grid_hit.is_none() && pigeonhole,
    }
}

#[derive(Serialize)]
struct Config {
    seed: u64,
    pairs: usize,
    grid_denominator: u32,
}

pub fn run(a: &BingArgs) -> Report {
    let seed = a.common.seed;
    let mut report = Report::new("bing", Config { seed, pairs: a.pairs, grid_denominator: a.grid_denominator });
    let pairs = pairwise_sweep(&mut gen::rng(seed, 0), a.pairs);
    let mut sweep = Sweep::default();
    for p in &pairs {
        sweep.record(p.verified, || format!("{} / {}", p.systems[0], p.systems[1]));
    }
    report.check(sweep.check("pairwise witnesses"));
    match bing_empty_triple(a.grid_denominator) {
        Ok(t) => {
            let tr = triple_report(&t);
            report.check(Check::new("triple pairwise witnesses", tr.pairwise_verified, tr.pairwise.join(" ")));
            report.check(Check::new("pigeonhole certificate", tr.pigeonhole, "closed hulls pairwise disjoint"));
            report.check(Check::new(
                "triple grid search",
                tr.grid_hit.is_none(),
                match &tr.grid_hit {
                    Some(p) => format!("common point {p}"),
                    None => format!("no common point with denominator ≤ {}", a.grid_denominator),
                },
            ));
            report.section("triple", tr);
            report.section("triple_empty", t.verified());
        }
        Err(e) => {
            report.check(Check::new("triple", false, e.to_string()));
            report.section("triple_empty", false);
        }
    }
    report.section("pairwise", pairs);
    report.section("grid_denominator_bound", a.grid_denominator);
    report
}
