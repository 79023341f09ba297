use std::collections::BTreeMap;
use std::fmt::Display;

use au_core::reaping::sets::{co_reciprocals, dyadic_intervals, evens, naturals, odds, primes, progression, reciprocals, unit_rationals};
use au_core::reaping::{raw_limit, run_one_step, EnumSet, ExtensionResult, OneStep, ReapConfig, ReapError};
use rand::Rng;
use serde::Serialize;

use crate::args::ExtendArgs;
use crate::gen;
use crate::report::{Check, Report, Sweep};

/// Every selector with domain inside `0..stages` and at most `depth` entries,
/// the empty one included.
pub fn selectors(stages: usize, depth: usize) -> Vec<BTreeMap<usize, bool>> {
    let mut out = vec![BTreeMap::new()];
    let mut frontier = vec![BTreeMap::new()];
    for _ in 0..depth.min(stages) {
        let mut next = Vec::new();
        for eps in &frontier {
            let start = eps.keys().next_back().map_or(0, |&n: &usize| n + 1);
            for n in start..stages {
                for bit in [false, true] {
                    let mut e = eps.clone();
                    e.insert(n, bit);
                    next.push(e);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct StageVerdict {
    pub stage: usize,
    pub family_size: usize,
    pub excluded: String,
    pub excluded_ok: bool,
    pub min_inside: usize,
    pub min_outside: usize,
    pub pieces_kept: usize,
    pub pieces_dropped: usize,
    pub split_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionReport {
    pub ground: String,
    pub initial_family: Vec<String>,
    pub family_sizes: Vec<usize>,
    pub stages: Vec<StageVerdict>,
    pub subbase: String,
    /// `D_m` listed in decision order, up to the scan bound.
    pub ladders: Vec<Vec<String>>,
    pub closure_progress_i: bool,
    pub closure_progress_j: bool,
    pub dense_trace: Sweep,
    pub recursion_ok: bool,
    pub exclusion_ok: bool,
    pub split_ok: bool,
}

impl ExtensionReport {
    pub fn checks(&self, label: &str, t: usize) -> Vec<Check> {
        let stages = self.stages.len();
        vec![
            Check::new(&format!("{label}: ladders avoid u_m"), self.exclusion_ok, format!("{stages} stages")),
            Check::new(&format!("{label}: ladders split their families"), self.split_ok, format!("{stages} stages")),
            Check::new(&format!("{label}: family recursion"), self.recursion_ok, format!("sizes {:?}", self.family_sizes)),
            Check::new(&format!("{label}: closure progress I"), self.closure_progress_i, format!("t = {t}")),
            Check::new(&format!("{label}: closure progress J"), self.closure_progress_j, format!("t = {t}")),
            self.dense_trace.check(&format!("{label}: dense traces")),
        ]
    }

    pub fn ok(&self) -> bool {
        self.exclusion_ok
            && self.split_ok
            && self.recursion_ok
            && self.closure_progress_i
            && self.closure_progress_j
            && self.dense_trace.ok()
    }
}

/// Checks every invariant of an extension result.
pub fn examine<E: Clone + Ord + std::fmt::Debug + Display + 'static>(
    r: &ExtensionResult<E>,
    ground: &EnumSet<E>,
    i: &EnumSet<E>,
    j: &EnumSet<E>,
    t: usize,
    scan: usize,
    depth: usize,
) -> ExtensionReport {
    let stages = r.ladders.len();
    let u = ground.first(stages, raw_limit(stages));
    let exclusion_ok = u.len() == stages && r.ladders.iter().zip(&u).all(|(d, x)| !d.is_inside(x));
    let mut recursion_ok = r.family_sizes.len() == stages;
    for w in r.stages.windows(2) {
        recursion_ok &= w[1].family_size == w[0].family_size + w[0].pieces_kept;
    }
    let budget = r.config.budget;
    let mut dense = Sweep::default();
    let sels = selectors(stages, depth);
    for c in &r.initial_family {
        let prefix = c.first(scan, raw_limit(scan));
        for eps in &sels {
            let n = r.count_trace_in(&prefix, eps);
            dense.record(n >= 1, || format!("{} {:?}: {n}", c.name(), eps));
        }
    }
    ExtensionReport {
        ground: ground.name().to_string(),
        initial_family: r.initial_family.iter().map(|c| c.name().to_string()).collect(),
        family_sizes: r.family_sizes.clone(),
        stages: r
            .stages
            .iter()
            .map(|s| StageVerdict {
                stage: s.stage,
                family_size: s.family_size,
                excluded: s.excluded.clone(),
                excluded_ok: s.excluded_ok,
                min_inside: s.min_inside,
                min_outside: s.min_outside,
                pieces_kept: s.pieces_kept,
                pieces_dropped: s.pieces_dropped,
                split_ok: s.ok(budget),
            })
            .collect(),
        subbase: r.subbase.to_string(),
        ladders: r.ladders.iter().map(|d| d.prefix(scan).iter().map(ToString::to_string).collect()).collect(),
        closure_progress_i: r.closure_progress(i, t, scan),
        closure_progress_j: r.closure_progress(j, t, scan),
        dense_trace: dense,
        recursion_ok,
        exclusion_ok,
        split_ok: r.all_stages_ok(),
    }
}

/// The rationals of `(0,1)` with `I = {1/(n+2)}`, `J = {1 − 1/(n+2)}` and
/// the dyadic intervals of width at least 1/8.
pub fn reference(stages: usize, budget: usize, scan: usize, t: usize, depth: usize) -> Result<ExtensionReport, ReapError> {
    let ground = unit_rationals();
    let (i, j) = (reciprocals(), co_reciprocals());
    let base = dyadic_intervals(3);
    let input = OneStep { ground: &ground, i: &i, j: &j, pairs: &[], base: &base };
    let r = run_one_step(&input, stages, ReapConfig { budget, rounds: scan }, 0)?;
    Ok(examine(&r, &ground, &i, &j, t, scan, depth))
}

/// A seeded instance over ℕ built from progressions, primes and the given
/// extra progressions.
pub fn seeded_naturals(
    seed: u64,
    extra: &[(u64, u64)],
    stages: usize,
    budget: usize,
    scan: usize,
    t: usize,
    depth: usize,
) -> Result<ExtensionReport, ReapError> {
    let mut rng = gen::rng(seed, 0);
    let ap = |rng: &mut gen::SeededRng| {
        let step = rng.random_range(2..=5);
        progression(rng.random_range(0..step), step)
    };
    let ground = naturals();
    let (i, j) = (ap(&mut rng), ap(&mut rng));
    let mut base = vec![evens(), odds(), primes(), ap(&mut rng), ap(&mut rng)];
    base.extend(extra.iter().map(|&(a, s)| progression(a, s)));
    let pairs = vec![(rng.random_range(0..10u64), ap(&mut rng))];
    let input = OneStep { ground: &ground, i: &i, j: &j, pairs: &pairs, base: &base };
    let r = run_one_step(&input, stages, ReapConfig { budget, rounds: scan }, 0)?;
    Ok(examine(&r, &ground, &i, &j, t, scan, depth))
}

#[derive(Serialize)]
struct Config {
    seed: u64,
    stages: usize,
    budget: usize,
    scan: usize,
    t: usize,
    depth: usize,
    progressions: Vec<String>,
}

pub fn run(a: &ExtendArgs) -> Report {
    let seed = a.common.seed;
    let mut report = Report::new(
        "extend",
        Config {
            seed,
            stages: a.stages,
            budget: a.budget,
            scan: a.scan,
            t: a.t,
            depth: a.depth,
            progressions: a.progressions.iter().map(|(s, d)| format!("{s}:{d}")).collect(),
        },
    );
    let runs = [
        ("reference", reference(a.stages, a.budget, a.scan, a.t, a.depth)),
        ("naturals", seeded_naturals(seed, &a.progressions, a.stages, a.budget, a.scan, a.t, a.depth)),
    ];
    for (label, r) in runs {
        match r {
            Ok(r) => {
                for c in r.checks(label, a.t) {
                    report.check(c);
                }
                report.section(label, r);
            }
            Err(e) => {
                report.check(Check::new(label, false, e.to_string()));
                report.section(label, e.to_string());
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selector_counts() {
        // Σ_{d ≤ 3} C(4,d)·2^d = 1 + 8 + 24 + 32
        assert_eq!(selectors(4, 3).len(), 65);
        assert_eq!(selectors(4, 0).len(), 1);
        assert_eq!(selectors(2, 5).len(), 1 + 4 + 4);
    }
}
