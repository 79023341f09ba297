//! Report assembly and output.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::PathBuf;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::args::{Common, Format};

pub const SCHEMA: u64 = 1;

/// Outcome of a sweep: how many checks ran, and the first few failures.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Sweep {
    pub checked: usize,
    pub failed: usize,
    pub failures: Vec<String>,
}

impl Sweep {
    const KEEP: usize = 16;

    pub fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < Self::KEEP {
                self.failures.push(what());
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn check(&self, name: &str) -> Check {
        Check::count(name, self.checked, self.failed)
    }
}

/// One verified property with a short human-readable detail.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }

    /// `failures` out of `total`, passing when there are none.
    pub fn count(name: &str, total: usize, failures: usize) -> Self {
        Check::new(name, failures == 0, format!("{} of {total} verified", total - failures))
    }
}

#[derive(Debug)]
pub struct Report {
    pub subcommand: &'static str,
    pub config: Value,
    pub checks: Vec<Check>,
    /// Subcommand-specific sections, keyed by name.
    pub sections: Map<String, Value>,
}

impl Report {
    pub fn new(subcommand: &'static str, config: impl Serialize) -> Self {
        Report {
            subcommand,
            config: serde_json::to_value(config).expect("config serializes"),
            checks: Vec::new(),
            sections: Map::new(),
        }
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn section(&mut self, name: &str, value: impl Serialize) {
        self.sections.insert(name.into(), serde_json::to_value(value).expect("section serializes"));
    }

    pub fn verified(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        let mut root = self.sections.clone();
        root.insert("schema".into(), SCHEMA.into());
        root.insert("subcommand".into(), self.subcommand.into());
        root.insert("config".into(), self.config.clone());
        root.insert("checks".into(), serde_json::to_value(&self.checks).expect("checks serialize"));
        root.insert("verified".into(), self.verified().into());
        let mut s = serde_json::to_string_pretty(&Value::Object(root)).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let verdict = if self.verified() { "verified" } else { "FAILED" };
        let _ = writeln!(s, "au {}: {verdict}", self.subcommand);
        for c in &self.checks {
            let mark = if c.passed { "pass" } else { "FAIL" };
            let _ = writeln!(s, "  [{mark}] {}: {}", c.name, c.detail);
        }
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Text => self.to_text(),
        }
    }
}

/// Where the report goes: `AU_REPORT_DIR` overrides `--output`; without
/// either the report is printed.
pub fn destination(subcommand: &str, common: &Common) -> Option<PathBuf> {
    let ext = match common.format {
        Format::Json => "json",
        Format::Text => "txt",
    };
    match std::env::var_os("AU_REPORT_DIR") {
        Some(dir) if !dir.is_empty() => {
            let name = common
                .output
                .as_ref()
                .and_then(|p| p.file_name().map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from(format!("{subcommand}.{ext}")));
            Some(PathBuf::from(dir).join(name))
        }
        _ => common.output.clone(),
    }
}

pub fn emit(report: &Report, common: &Common) -> io::Result<()> {
    let body = report.render(common.format);
    match destination(report.subcommand, common) {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(path, body)
        }
        None => io::stdout().lock().write_all(body.as_bytes()),
    }
}
