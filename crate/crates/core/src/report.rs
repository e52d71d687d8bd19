//! JSON reports emitted by every verifier.

use std::time::Instant;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub case: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub range: String,
    pub tuples_checked: u64,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u64,
    /// Observations that are reported but not asserted.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Accumulates a [`Report`] while a check runs.
#[derive(Debug)]
pub struct ReportBuilder {
    report: Report,
    started: Instant,
}

impl ReportBuilder {
    pub fn new(check: &str, range: impl Into<String>) -> Self {
        Self {
            report: Report {
                check: check.to_string(),
                range: range.into(),
                tuples_checked: 0,
                failures: Vec::new(),
                elapsed_ms: 0,
                notes: Vec::new(),
            },
            started: Instant::now(),
        }
    }

    pub fn checked(&mut self, k: u64) {
        self.report.tuples_checked += k;
    }

    pub fn fail(&mut self, case: impl Into<String>, detail: impl Into<String>) {
        self.report.failures.push(Failure {
            case: case.into(),
            detail: detail.into(),
        });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.report.notes.push(note.into());
    }

    pub fn extend_failures(&mut self, failures: impl IntoIterator<Item = Failure>) {
        self.report.failures.extend(failures);
    }

    pub fn finish(mut self) -> Report {
        self.report.elapsed_ms = self.started.elapsed().as_millis() as u64;
        self.report
    }
}
