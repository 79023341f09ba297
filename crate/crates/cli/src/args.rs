use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "au", version, about = "Batch verifier for countable anti-Urysohn constructions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Seed for every generated instance.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Report destination; stdout when absent. `AU_REPORT_DIR` takes precedence.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Glued Cantor-cube space: intersection witnesses, closure oracle, Hausdorff witnesses.
    Cantor(CantorArgs),
    /// Bing's irrational-slope space: pairwise witnesses and the empty triple.
    Bing(BingArgs),
    /// One-step extension ladders on the reference instance and a seeded instance over ℕ.
    Extend(ExtendArgs),
    /// Cohen fragments: dyadicity, strengthening, tail closure and splitting fibers.
    Star(StarArgs),
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Clone, Args)]
pub struct CantorArgs {
    #[command(flatten)]
    pub common: Common,
    /// Number of seeded tuples of opens.
    #[arg(long, default_value_t = 100)]
    pub pairs: usize,
    /// Largest tuple size.
    #[arg(long, default_value_t = 5, value_parser = positive)]
    pub arity: usize,
    /// Box domains are drawn from `[0, index-bound)`.
    #[arg(long, default_value_t = 16, value_parser = positive)]
    pub index_bound: usize,
    /// Final-segment law is checked for glued points below this bound.
    #[arg(long, default_value_t = 128, value_parser = positive)]
    pub gamma_bound: usize,
    /// Seeded Y points for the Hausdorff sweep.
    #[arg(long, default_value_t = 8)]
    pub y_points: usize,
    /// Glued points `0..n` for the Hausdorff sweep.
    #[arg(long, default_value_t = 8)]
    pub glued_points: usize,
    /// Sampled points per Hausdorff pair.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
}

#[derive(Debug, Clone, Args)]
pub struct BingArgs {
    #[command(flatten)]
    pub common: Common,
    /// Number of seeded pairs of interval systems.
    #[arg(long, default_value_t = 200)]
    pub pairs: usize,
    /// Grid denominators `1..=N` for the triple search.
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u32).range(1..))]
    pub grid_denominator: u32,
}

#[derive(Debug, Clone, Args)]
pub struct ExtendArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 4, value_parser = positive)]
    pub stages: usize,
    #[arg(long, default_value_t = 16, value_parser = positive)]
    pub budget: usize,
    #[arg(long, default_value_t = 512, value_parser = positive)]
    pub scan: usize,
    /// Threshold for closure progress of I and J.
    #[arg(long, default_value_t = 8)]
    pub t: usize,
    /// Largest selector domain in the dense-trace check.
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
    /// Extra predicate set `start:step` for the seeded instance over ℕ (repeatable).
    #[arg(long = "progression", value_parser = parse_progression)]
    pub progressions: Vec<(u64, u64)>,
}

fn parse_progression(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once(':').ok_or("expected start:step")?;
    let a = a.trim().parse::<u64>().map_err(|e| e.to_string())?;
    let b = b.trim().parse::<u64>().map_err(|e| e.to_string())?;
    if b == 0 {
        return Err("step must be positive".into());
    }
    Ok((a, b))
}

#[derive(Debug, Clone, Args)]
pub struct StarArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long = "K", default_value_t = 64, value_parser = positive)]
    pub k: usize,
    #[arg(long = "M", default_value_t = 8, value_parser = positive)]
    pub m: usize,
    /// Dyadicity threshold.
    #[arg(long, default_value_t = 1)]
    pub t: usize,
    /// Selector depth for the tail-closure check.
    #[arg(long, default_value_t = 2)]
    pub depth: usize,
    /// Cutoff β: sets live in `β × M`, selectors above β. Defaults to K/2.
    #[arg(long)]
    pub beta: Option<usize>,
    /// |S| for the dyadicity sweep.
    #[arg(long, default_value_t = 128)]
    pub size: usize,
    /// Number of seeded (S, ε) instances.
    #[arg(long, default_value_t = 100)]
    pub selectors: usize,
    /// Largest selector domain in the dyadicity sweep.
    #[arg(long, default_value_t = 3)]
    pub selector_depth: usize,
    /// |S| for the tail-closure check.
    #[arg(long, default_value_t = 64)]
    pub closure_size: usize,
    /// Pairs scheduled in the single-fiber strengthening.
    #[arg(long, default_value_t = 20)]
    pub schedule_pairs: usize,
    /// Cutoff γ of the many-fiber strengthening. Defaults to K/8.
    #[arg(long)]
    pub cutoff: Option<usize>,
    /// Random families for the splitting-fiber sweep.
    #[arg(long, default_value_t = 100)]
    pub families: usize,
    /// Write the fragment dump here.
    #[arg(long)]
    pub dump: Option<std::path::PathBuf>,
}
