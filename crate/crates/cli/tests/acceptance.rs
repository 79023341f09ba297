//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::path::Path;
use std::process::Command;

use au_core::bing::bing_empty_triple;
use au_core::star::cohen_fragment;
use au_workbench::commands::{bing, cantor, extend, star};
use au_workbench::gen::rng;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

const SEED: u64 = 2024;

fn final_segment() -> Outcome {
    let opens = cantor::random_opens(&mut rng(SEED, 10), 500, 16);
    let s = cantor::final_segment_sweep(&opens, 128);
    outcome(s.ok(), format!("500 opens, {} memberships, {} failures {:?}", s.checked, s.failed, s.failures))
}

fn closure_oracle() -> Outcome {
    let opens = cantor::random_opens(&mut rng(SEED, 11), 500, 16);
    let s = cantor::oracle_sweep(&opens, 16, &mut rng(SEED, 12), 0);
    outcome(s.ok() && s.checked == 500 * 20, format!("{} of {} agree {:?}", s.checked - s.failed, s.checked, s.failures))
}

fn intersections() -> Outcome {
    let tuples = cantor::random_tuples(&mut rng(SEED, 13), 500, 5, 16);
    let bad: Vec<_> = tuples
        .iter()
        .map(|t| cantor::intersection_instance(t, 16))
        .filter(|i| !i.verified)
        .map(|i| i.opens.join(" ; "))
        .collect();
    outcome(bad.is_empty(), format!("500 tuples, k ≤ 5, {} failures {:?}", bad.len(), bad))
}

fn hausdorff() -> Outcome {
    let s = cantor::hausdorff_sweep(&mut rng(SEED, 14), 8, 8, 1000, 16);
    outcome(s.ok() && s.checked == 120, format!("{} pairs, 1000 samples each, {} failures {:?}", s.checked, s.failed, s.failures))
}

fn bing_space() -> Outcome {
    let pairs = bing::pairwise_sweep(&mut rng(SEED, 15), 200);
    let bad = pairs.iter().filter(|p| !p.verified).count();
    let t = match bing_empty_triple(50) {
        Ok(t) => bing::triple_report(&t),
        Err(e) => return outcome(false, format!("triple: {e}")),
    };
    let ok = bad == 0 && t.pairwise_verified && t.pigeonhole && t.grid_hit.is_none();
    outcome(
        ok,
        format!(
            "200 pairs ({bad} failures); triple pairwise={} pigeonhole={} grid≤50 hit={:?}",
            t.pairwise_verified, t.pigeonhole, t.grid_hit
        ),
    )
}

fn extension() -> Outcome {
    match extend::reference(4, 16, 512, 8, 3) {
        Ok(r) => outcome(
            r.ok(),
            format!(
                "progress I={} J={}, dense traces {}/{}, stages ok={}",
                r.closure_progress_i,
                r.closure_progress_j,
                r.dense_trace.checked - r.dense_trace.failed,
                r.dense_trace.checked,
                r.split_ok && r.exclusion_ok && r.recursion_ok
            ),
        ),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn star_shadows() -> Outcome {
    let f = cohen_fragment(64, 8, 42).expect("valid bounds");
    let dy = star::dyadicity_sweep(&f, &mut rng(SEED, 16), 100, 128, 32, 3, 1);
    let c1 = match star::case1_sweep(64, 42, &mut rng(SEED, 17), 20) {
        Ok(c) => c,
        Err(e) => return outcome(false, e),
    };
    let g = cohen_fragment(64, 4, 7).expect("valid bounds");
    let cl = star::closure_summary(&g, &mut rng(SEED, 18), 64, 32, 2);
    let ok = dy.sweep.ok() && dy.sweep.checked == 100 && c1.sweep.ok() && c1.schedule.len() == 20 && cl.failing.is_empty();
    outcome(
        ok,
        format!(
            "dyadicity {}/100 (min count {:?}); case 1 {}/20 pairs separated; closure {} failing of {}",
            dy.sweep.checked - dy.sweep.failed,
            dy.counts.iter().min(),
            c1.schedule.iter().filter(|s| s.3.is_some_and(|a| a <= s.2)).count(),
            cl.failing.len(),
            cl.cells_checked
        ),
    )
}

fn splitting() -> Outcome {
    let s = star::fiber_sweep(&mut rng(SEED, 19), 100, 256);
    outcome(s.ok() && s.checked == 100, format!("100 families, {} failures {:?}", s.failed, s.failures))
}

fn run_cli(args: &[&str], dir: &Path) -> Option<Vec<u8>> {
    let status = Command::new(env!("CARGO_BIN_EXE_au"))
        .args(args)
        .env("AU_REPORT_DIR", dir)
        .status()
        .ok()?;
    let name = format!("{}.json", args[0]);
    (status.code() == Some(0)).then(|| std::fs::read(dir.join(name)).ok()).flatten()
}

fn determinism() -> Outcome {
    let base = std::env::temp_dir().join(format!("au-acceptance-{}", std::process::id()));
    let configs: [&[&str]; 4] = [
        &["cantor", "--pairs", "40", "--seed", "3"],
        &["bing", "--pairs", "50", "--grid-denominator", "8", "--seed", "9"],
        &["extend", "--seed", "0"],
        &["star", "--K", "64", "--M", "8", "--seed", "42"],
    ];
    let mut bad = Vec::new();
    for args in configs {
        let runs: Vec<_> = (0..2)
            .map(|k| {
                let dir = base.join(format!("{}-{k}", args[0]));
                std::fs::create_dir_all(&dir).ok()?;
                run_cli(args, &dir)
            })
            .collect();
        match (&runs[0], &runs[1]) {
            (Some(a), Some(b)) if a == b => {}
            _ => bad.push(args[0]),
        }
    }
    let _ = std::fs::remove_dir_all(&base);
    outcome(bad.is_empty(), format!("4 subcommands, differing or failing: {bad:?}"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("final-segment law", final_segment),
        ("closure decision vs oracle", closure_oracle),
        ("finite AU law", intersections),
        ("Hausdorff witnesses", hausdorff),
        ("Bing AU + empty triple", bing_space),
        ("one-step extension shadows", extension),
        ("star shadows", star_shadows),
        ("splitting bound", splitting),
        ("CLI determinism", determinism),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        let mark = if o.passed { "PASS" } else { "FAIL" };
        println!("criterion {}: {mark} {name} — {}", n + 1, o.detail);
        failed += usize::from(!o.passed);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
