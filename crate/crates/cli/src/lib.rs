//! Batch driver for the `au-core` engines: seeded sweeps, brute-force
//! oracles, fragment dumps and versioned JSON reports.
//!
//! Exit codes: 0 when every check passes, 1 when one fails, 2 on usage errors.

pub mod args;
pub mod commands;
pub mod dump;
pub mod gen;
pub mod oracle;
pub mod report;

use std::ffi::OsString;

use clap::Parser;

use args::{Cli, Command};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let (report, common) = match &cli.command {
        Command::Cantor(a) => (Ok(commands::cantor::run(a)), &a.common),
        Command::Bing(a) => (Ok(commands::bing::run(a)), &a.common),
        Command::Extend(a) => (Ok(commands::extend::run(a)), &a.common),
        Command::Star(a) => (commands::star::run(a), &a.common),
    };
    let report = match report {
        Ok(r) => r,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    if let Err(e) = report::emit(&report, common) {
        eprintln!("error: cannot write report: {e}");
        return EXIT_USAGE;
    }
    if report.verified() {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}
