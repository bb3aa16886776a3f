//! Verification reports and their JSON, TSV and human-readable renderings.

use std::fmt::Write as _;

use serde::{Serialize, Serializer};
use serde_json::{Map, Value};

use crate::graph::Graph;
use crate::graph6;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub claim: String,
    /// Stable tag naming the statement being checked.
    pub anchor: String,
    pub status: Status,
    /// Counts and graph6 witnesses backing the status.
    pub evidence: Value,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ReportStats {
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub command: String,
    pub params: Map<String, Value>,
    pub checks: Vec<Check>,
    /// Pass only when every check passed; a skipped check leaves the
    /// aggregate at `skipped` unless something failed.
    pub aggregate: Status,
    pub stats: ReportStats,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(command: impl Into<String>, params: Map<String, Value>) -> Self {
        VerificationReport {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            params,
            checks: Vec::new(),
            aggregate: Status::Pass,
            stats: ReportStats::default(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        match check.status {
            Status::Pass => self.stats.passed += 1,
            Status::Fail => self.stats.failed += 1,
            Status::Skipped => self.stats.skipped += 1,
        }
        self.stats.checks += 1;
        self.checks.push(check);
        self.aggregate = if self.stats.failed > 0 {
            Status::Fail
        } else if self.stats.skipped > 0 {
            Status::Skipped
        } else {
            Status::Pass
        };
    }

    pub fn note(&mut self, note: impl Into<String>) {
        let note = note.into();
        if !self.notes.contains(&note) {
            self.notes.push(note);
        }
    }

    pub fn passed(&self) -> bool {
        self.aggregate == Status::Pass
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Tsv,
    Human,
}

pub fn emit_report(report: &VerificationReport, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s.into_bytes()
        }
        ReportFormat::Tsv => {
            let mut s = String::from("claim\tanchor\tstatus\tevidence\n");
            for c in &report.checks {
                let _ = writeln!(
                    s,
                    "{}\t{}\t{}\t{}",
                    tsv_cell(&c.claim),
                    tsv_cell(&c.anchor),
                    c.status.as_str(),
                    c.evidence
                );
            }
            s.into_bytes()
        }
        ReportFormat::Human => {
            let mut s = format!(
                "{} ({})\n",
                report.command,
                Value::Object(report.params.clone())
            );
            for c in &report.checks {
                let _ = writeln!(s, "  [{}] {}  <{}>", c.status.as_str(), c.claim, c.anchor);
                if c.status != Status::Pass {
                    let _ = writeln!(s, "      evidence: {}", c.evidence);
                }
            }
            for n in &report.notes {
                let _ = writeln!(s, "  note: {n}");
            }
            let st = &report.stats;
            let _ = writeln!(
                s,
                "aggregate: {} ({} checks, {} passed, {} failed, {} skipped)",
                report.aggregate.as_str(),
                st.checks,
                st.passed,
                st.failed,
                st.skipped
            );
            s.into_bytes()
        }
    }
}

fn tsv_cell(s: &str) -> String {
    s.replace(['\t', '\n'], " ")
}

pub(crate) fn ser_g6<S: Serializer>(g: &Graph, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&graph6::encode(g))
}

/// Graph6 string as a JSON value.
pub fn g6(g: &Graph) -> Value {
    Value::String(graph6::encode(g))
}
