//! Suite results and the JSON and markdown documents built from them.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Version of the JSON report layout. Bump on any field change.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

impl Backend {
    pub fn as_str(self) -> &'static str {
        match self {
            Backend::Exact => "exact",
            Backend::Float => "float",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A non-invariance or counterexample demonstrated as expected.
    Witness,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Witness => "witness",
        }
    }

    pub fn is_success(self) -> bool {
        self != Status::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite_id: String,
    pub paper_anchor: String,
    pub status: Status,
    pub max_residual: f64,
    pub witness_payload: Option<Value>,
    pub seed: u64,
    pub backend: Backend,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub results: Vec<SuiteResult>,
}

impl Report {
    pub fn new(results: Vec<SuiteResult>) -> Self {
        Report { schema_version: SCHEMA_VERSION, results }
    }

    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.status.is_success())
    }

    pub fn count(&self, s: Status) -> usize {
        self.results.iter().filter(|r| r.status == s).count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Md,
}

pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Json => to_json(report),
        Format::Md => to_markdown(report),
    }
}

pub fn to_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report values are finite");
    s.push('\n');
    s
}

pub fn from_json(s: &str) -> serde_json::Result<Report> {
    serde_json::from_str(s)
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|")
}

pub fn to_markdown(report: &Report) -> String {
    let mut out = String::new();
    out.push_str("| anchor | suite | status | max residual | backend | seed |\n");
    out.push_str("|---|---|---|---|---|---|\n");
    for r in &report.results {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {:e} | {} | {} |",
            cell(&r.paper_anchor),
            cell(&r.suite_id),
            r.status.as_str(),
            r.max_residual,
            r.backend.as_str(),
            r.seed
        );
    }
    if !report.results.is_empty() {
        let _ = writeln!(
            out,
            "\n{} suites: {} pass, {} witness, {} fail",
            report.results.len(),
            report.count(Status::Pass),
            report.count(Status::Witness),
            report.count(Status::Fail)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> SuiteResult {
        SuiteResult {
            suite_id: "demo.identity".into(),
            paper_anchor: "Demo".into(),
            status: Status::Pass,
            max_residual: 0.0,
            witness_payload: None,
            seed: 42,
            backend: Backend::Exact,
        }
    }

    #[test]
    fn empty_documents() {
        let r = Report::new(vec![]);
        let v: Value = serde_json::from_str(&to_json(&r)).unwrap();
        assert_eq!(v["results"], Value::Array(vec![]));
        assert_eq!(v["schema_version"], SCHEMA_VERSION);
        let md = to_markdown(&r);
        assert_eq!(md.lines().count(), 2);
    }

    #[test]
    fn one_row() {
        let r = Report::new(vec![one()]);
        let md = to_markdown(&r);
        let rows: Vec<&str> = md.lines().filter(|l| l.starts_with("| Demo")).collect();
        assert_eq!(rows.len(), 1);
        assert!(rows[0].starts_with("| Demo | demo.identity | pass |"));
        assert_eq!(from_json(&to_json(&r)).unwrap(), r);
    }

    #[test]
    fn field_names_are_fixed() {
        let v = serde_json::to_value(one()).unwrap();
        let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        keys.sort();
        assert_eq!(keys, ["backend", "max_residual", "paper_anchor", "seed", "status", "suite_id", "witness_payload"]);
        assert_eq!(v["status"], "pass");
        assert_eq!(v["backend"], "exact");
    }
}
