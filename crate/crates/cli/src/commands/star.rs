use std::collections::BTreeMap;

use au_core::star::{
    cohen_fragment, consecutive_schedule, dyadicity_check, no_member_splits, separation_check, splitting_fiber_map,
    star_topology_closure, strongify_case1, strongify_case2, symmetric_differences, Cell, StarFragment,
};
use rand::Rng;
use serde::Serialize;

use crate::args::StarArgs;
use crate::dump::write_fragment;
use crate::gen::{self, SeededRng};
use crate::oracle::tail_equivalent;
use crate::report::{Check, Report, Sweep};

#[derive(Clone, Debug, Default, Serialize)]
pub struct DyadicityReport {
    pub sweep: Sweep,
    pub counts: Vec<usize>,
}

/// `count` seeded pairs `(S, ε)` with `S ⊆ β × M` and `dom ε ⊆ [β, K)`.
pub fn dyadicity_sweep(
    f: &StarFragment,
    rng: &mut SeededRng,
    count: usize,
    size: usize,
    beta: usize,
    max_depth: usize,
    t: usize,
) -> DyadicityReport {
    let mut r = DyadicityReport::default();
    for _ in 0..count {
        let s = gen::random_cells(rng, size, beta, f.m());
        let eps = gen::random_selector(rng, beta, f.k(), max_depth);
        match dyadicity_check(f, &s, &eps, t) {
            Ok((n, ok)) => {
                r.counts.push(n);
                r.sweep.record(ok, || format!("{eps:?}: {n} < {t}"));
            }
            Err(e) => r.sweep.record(false, || e.to_string()),
        }
    }
    r
}

#[derive(Clone, Debug, Serialize)]
pub struct Case1Report {
    /// `(ζ, ξ, α, separating α found)` for each scheduled pair.
    pub schedule: Vec<(usize, usize, usize, Option<usize>)>,
    pub max_symmetric_difference: usize,
    pub sweep: Sweep,
}

/// Single-fiber strengthening of `cohen_fragment(K, 1, seed)` with `pairs`
/// pairs below `K/2` scheduled at `K/2, K/2 + 1, …`.
pub fn case1_sweep(k: usize, seed: u64, rng: &mut SeededRng, pairs: usize) -> Result<Case1Report, String> {
    let half = k / 2;
    if half < 2 || pairs > k - half {
        return Err(format!("cannot schedule {pairs} pairs with K = {k}"));
    }
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    while chosen.len() < pairs {
        let z = rng.random_range(0..half);
        let x = rng.random_range(0..half);
        if z != x && !chosen.contains(&(z, x)) {
            chosen.push((z, x));
        }
    }
    let f = cohen_fragment(k, 1, seed).map_err(|e| e.to_string())?;
    let g = strongify_case1(&f, &consecutive_schedule(&chosen, half)).map_err(|e| e.to_string())?;
    let diffs = symmetric_differences(&f, &g);
    let mut sweep = Sweep::default();
    sweep.record(g.partition_ok(), || "partition broken".into());
    sweep.record(diffs.iter().all(|&d| d <= 2), || format!("symmetric differences {diffs:?}"));
    let mut schedule = Vec::new();
    for (n, &(z, x)) in chosen.iter().enumerate() {
        let alpha = half + n;
        let sep = separation_check(&g, (z, 0), (x, 0), half).map_err(|e| e.to_string())?;
        let exact = g.in_zero(alpha, (z, 0)) && !g.in_zero(alpha, (x, 0));
        sweep.record(exact && sep.is_some_and(|s| s <= alpha), || format!("({z},{x}) at {alpha}: {sep:?}"));
        schedule.push((z, x, alpha, sep));
    }
    Ok(Case1Report { schedule, max_symmetric_difference: diffs.into_iter().max().unwrap_or(0), sweep })
}

#[derive(Clone, Debug, Serialize)]
pub struct Case2Summary {
    pub cutoff: usize,
    pub classes: usize,
    pub class_size_histogram: BTreeMap<usize, usize>,
    pub transversal: Vec<Cell>,
    pub transversal_deficit: Vec<usize>,
    pub partition_ok: bool,
    pub transversal_inequivalent: bool,
}

impl Case2Summary {
    pub fn ok(&self) -> bool {
        self.partition_ok && self.transversal_inequivalent
    }
}

pub fn case2_summary(f: &StarFragment, cutoff: usize) -> Result<Case2Summary, String> {
    let (g, rep) = strongify_case2(f, cutoff).map_err(|e| e.to_string())?;
    let x = &rep.transversal;
    let inequivalent = x
        .iter()
        .enumerate()
        .all(|(i, &a)| x[i + 1..].iter().all(|&b| !tail_equivalent(f, a, b, cutoff)));
    Ok(Case2Summary {
        cutoff,
        classes: rep.class_sizes.len(),
        class_size_histogram: rep.histogram(),
        transversal: rep.transversal.clone(),
        transversal_deficit: rep.deficient_columns.clone(),
        partition_ok: g.partition_ok() && rep.class_sizes.iter().sum::<usize>() == cutoff * f.m(),
        transversal_inequivalent: inequivalent,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureSummary {
    pub beta: usize,
    pub depth: usize,
    pub set_size: usize,
    pub cells_checked: usize,
    pub failing: Vec<Cell>,
    pub least_failing: Option<Cell>,
}

pub fn closure_summary(f: &StarFragment, rng: &mut SeededRng, size: usize, beta: usize, depth: usize) -> ClosureSummary {
    let s = gen::random_cells(rng, size, beta, f.m());
    let r = star_topology_closure(f, &s, beta, depth).expect("cells drawn below beta");
    ClosureSummary {
        beta,
        depth,
        set_size: size,
        cells_checked: r.cells_checked,
        least_failing: r.least_failing(),
        failing: r.failing,
    }
}

/// Random families over grounds of at most `max_ground` points.
pub fn fiber_sweep(rng: &mut SeededRng, count: usize, max_ground: usize) -> Sweep {
    let mut s = Sweep::default();
    for _ in 0..count {
        let (n, fam) = gen::random_family(rng, max_ground, 12);
        let map = splitting_fiber_map(n, &fam);
        let covers = map.sizes().iter().sum::<usize>() == n;
        s.record(covers && map.within_bound() && no_member_splits(&map, &fam), || {
            format!("|X| = {n}, {} members, {} fibers", fam.len(), map.fiber_count())
        });
    }
    s
}

#[derive(Serialize)]
struct Config {
    seed: u64,
    k: usize,
    m: usize,
    t: usize,
    depth: usize,
    beta: usize,
    size: usize,
    selectors: usize,
    selector_depth: usize,
    closure_size: usize,
    schedule_pairs: usize,
    cutoff: usize,
    families: usize,
}

pub fn run(a: &StarArgs) -> Result<Report, String> {
    let (k, m, seed) = (a.k, a.m, a.common.seed);
    let beta = a.beta.unwrap_or(k / 2);
    let cutoff = a.cutoff.unwrap_or((k / 8).max(1));
    if beta == 0 || beta >= k {
        return Err(format!("--beta must lie in [1, K), got {beta}"));
    }
    if cutoff >= k {
        return Err(format!("--cutoff must be below K, got {cutoff}"));
    }
    for (flag, n) in [("--size", a.size), ("--closure-size", a.closure_size)] {
        if n > beta * m {
            return Err(format!("{flag} {n} exceeds |β × M| = {}", beta * m));
        }
    }
    let mut report = Report::new(
        "star",
        Config {
            seed,
            k,
            m,
            t: a.t,
            depth: a.depth,
            beta,
            size: a.size,
            selectors: a.selectors,
            selector_depth: a.selector_depth,
            closure_size: a.closure_size,
            schedule_pairs: a.schedule_pairs,
            cutoff,
            families: a.families,
        },
    );
    let f = cohen_fragment(k, m, seed).map_err(|e| e.to_string())?;
    if let Some(path) = &a.dump {
        std::fs::write(path, write_fragment(&f, seed)).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    report.check(Check::new("partition", f.partition_ok(), format!("K = {k}, M = {m}")));

    let dy = dyadicity_sweep(&f, &mut gen::rng(seed, 0), a.selectors, a.size, beta, a.selector_depth, a.t);
    report.check(dy.sweep.check("dyadicity"));
    report.section("dyadicity", dy);

    let c1 = case1_sweep(k, seed, &mut gen::rng(seed, 1), a.schedule_pairs)?;
    report.check(c1.sweep.check("single-fiber strengthening"));
    report.section("case1", c1);

    if m >= 2 {
        let c2 = case2_summary(&f, cutoff)?;
        report.check(Check::new(
            "many-fiber strengthening",
            c2.ok(),
            format!("{} classes, {} deficient columns", c2.classes, c2.transversal_deficit.len()),
        ));
        report.section("case2", c2);
    }

    let cl = closure_summary(&f, &mut gen::rng(seed, 2), a.closure_size, beta, a.depth);
    report.check(Check::new(
        "tail closure",
        cl.failing.is_empty(),
        format!("{} of {} tail cells pass", cl.cells_checked - cl.failing.len(), cl.cells_checked),
    ));
    report.section("closure", cl);

    let fib = fiber_sweep(&mut gen::rng(seed, 3), a.families, 256);
    report.check(fib.check("splitting fibers"));
    report.section("fibers", fib);
    Ok(report)
}
