//! Machine-readable experiment reports.
//!
//! Every subcommand produces one [`Report`]: the inputs it ran with, the
//! quantities it measured, and a list of named pass/fail checks. The JSON
//! rendering is the source of truth and is deterministic for a fixed
//! configuration and seed, except for the `timings_ms` field, which callers
//! comparing reports are expected to drop. Exact rational quantities are
//! always carried as strings (`"1/1920"`), never as floating point.

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Schema tag stamped on every report.
pub const SCHEMA: &str = "fputlab-report/1";

/// File formats a report can be rendered to. JSON is always written; the
/// other two are companions for quick inspection and plotting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Structured report; the source of truth.
    Json,
    /// Tabular payload (scan samples, time series) or the check list.
    Csv,
    /// Human-readable summary.
    Text,
}

/// One named pass/fail verdict with a human-readable explanation.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of one experiment run.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    /// Report schema version.
    pub schema: &'static str,
    /// Experiment identifier; also the output file stem.
    pub experiment: String,
    /// Echo of the validated configuration.
    pub inputs: Value,
    /// Seed behind any randomized data, when one was used.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Measured quantities: exact rationals as strings, floats for numerics.
    pub results: Value,
    /// Individual verdicts, in execution order.
    pub checks: Vec<Check>,
    /// Conjunction of all check verdicts.
    pub passed: bool,
    /// Wall-clock timings; excluded from determinism comparisons.
    pub timings_ms: BTreeMap<String, u64>,
    /// Optional tabular payload (header row first) backing the CSV format.
    #[serde(skip)]
    pub table: Vec<Vec<String>>,
}

impl Report {
    pub fn new(experiment: &str, inputs: Value) -> Self {
        Report {
            schema: SCHEMA,
            experiment: experiment.to_string(),
            inputs,
            seed: None,
            results: Value::Null,
            checks: Vec::new(),
            passed: true,
            timings_ms: BTreeMap::new(),
            table: Vec::new(),
        }
    }

    /// Records one verdict and folds it into the overall outcome.
    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.passed &= passed;
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    /// Convenience accessor used by tests: verdict of a named check.
    pub fn check_passed(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.passed)
    }

    /// Records the elapsed time since `started` under `label`.
    pub fn time(&mut self, label: &str, started: Instant) {
        self.timings_ms
            .insert(label.to_string(), started.elapsed().as_millis() as u64);
    }

    /// Pretty JSON rendering with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization cannot fail");
        s.push('\n');
        s
    }

    /// JSON rendering with the volatile timing data removed; two runs of the
    /// same configuration and seed produce byte-identical output here.
    pub fn comparable_json(&self) -> String {
        let mut value =
            serde_json::to_value(self).expect("report serialization cannot fail");
        if let Value::Object(map) = &mut value {
            map.remove("timings_ms");
        }
        let mut s =
            serde_json::to_string_pretty(&value).expect("value serialization cannot fail");
        s.push('\n');
        s
    }

    /// One line per check plus a final verdict line.
    pub fn text_summary(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.experiment);
        for c in &self.checks {
            let mark = if c.passed { " ok " } else { "FAIL" };
            let _ = writeln!(out, "  [{mark}] {} — {}", c.name, c.detail);
        }
        let good = self.checks.iter().filter(|c| c.passed).count();
        let _ = writeln!(
            out,
            "result: {} ({good}/{} checks)",
            if self.passed { "PASS" } else { "FAIL" },
            self.checks.len()
        );
        out
    }

    /// CSV rendering: the tabular payload when present, the check list
    /// otherwise.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        if self.table.is_empty() {
            out.push_str("name,passed,detail\n");
            for c in &self.checks {
                let _ = writeln!(
                    out,
                    "{},{},{}",
                    csv_field(&c.name),
                    c.passed,
                    csv_field(&c.detail)
                );
            }
        } else {
            for row in &self.table {
                let line: Vec<String> = row.iter().map(|f| csv_field(f)).collect();
                let _ = writeln!(out, "{}", line.join(","));
            }
        }
        out
    }
}

/// Quotes a CSV field when it contains a delimiter, quote, or newline.
fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// JSON value for a float that may be non-finite (serialized as a string in
/// that case, since JSON has no NaN/Inf literals).
pub fn float_value(v: f64) -> Value {
    match serde_json::Number::from_f64(v) {
        Some(n) => Value::Number(n),
        None => Value::String(format!("{v}")),
    }
}

/// Writes the report under `out_dir` and returns the created paths. The JSON
/// file is always written; `format` selects an optional companion file.
pub fn emit_report(report: &Report, out_dir: &Path, format: Format) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir)
        .with_context(|| format!("creating output directory {}", out_dir.display()))?;
    let mut written = Vec::new();
    let json_path = out_dir.join(format!("{}.json", report.experiment));
    fs::write(&json_path, report.to_json())
        .with_context(|| format!("writing {}", json_path.display()))?;
    written.push(json_path);
    match format {
        Format::Json => {}
        Format::Csv => {
            let path = out_dir.join(format!("{}.csv", report.experiment));
            fs::write(&path, report.to_csv())
                .with_context(|| format!("writing {}", path.display()))?;
            written.push(path);
        }
        Format::Text => {
            let path = out_dir.join(format!("{}.txt", report.experiment));
            fs::write(&path, report.text_summary())
                .with_context(|| format!("writing {}", path.display()))?;
            written.push(path);
        }
    }
    Ok(written)
}
