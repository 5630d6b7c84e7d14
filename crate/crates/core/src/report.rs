//! Verification reports shared by the library and the CLI.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

/// One named identity or invariant, with the first failing basis tuple if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, String>,
}

impl Check {
    pub fn pass(id: impl Into<String>) -> Self {
        Check {
            id: id.into(),
            status: Status::Pass,
            counterexample: None,
            detail: None,
            values: BTreeMap::new(),
        }
    }

    pub fn fail(id: impl Into<String>, counterexample: Option<Vec<String>>, detail: impl Into<String>) -> Self {
        Check {
            id: id.into(),
            status: Status::Fail,
            counterexample,
            detail: Some(detail.into()),
            values: BTreeMap::new(),
        }
    }

    pub fn info(id: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            id: id.into(),
            status: Status::Info,
            counterexample: None,
            detail: Some(detail.into()),
            values: BTreeMap::new(),
        }
    }

    pub fn with_value(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.values.insert(key.into(), value.to_string());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
    pub summary: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            checks: Vec::new(),
            summary: Status::Pass,
            elapsed_ms: None,
        }
    }

    pub fn push(&mut self, check: Check) {
        if check.status == Status::Fail {
            self.summary = Status::Fail;
        }
        self.checks.push(check);
    }

    /// Runs `pred` on every case and records a single check: pass, or fail at the first
    /// case for which `pred` returns an explanation.
    pub fn sweep<T, I, L, P>(&mut self, id: &str, cases: I, label: L, mut pred: P) -> bool
    where
        I: IntoIterator<Item = T>,
        L: Fn(&T) -> Vec<String>,
        P: FnMut(&T) -> Option<String>,
    {
        let mut n = 0usize;
        for case in cases {
            n += 1;
            if let Some(why) = pred(&case) {
                self.push(Check::fail(id, Some(label(&case)), why));
                return false;
            }
        }
        self.push(Check::pass(id).with_value("cases", n));
        true
    }

    /// Appends every check of `other`, prefixing its ids.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            if !prefix.is_empty() {
                c.id = format!("{prefix}.{}", c.id);
            }
            self.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.summary != Status::Fail
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.status == Status::Fail)
    }

    pub fn first_failure_line(&self) -> String {
        match self.first_failure() {
            Some(c) => render_check(c),
            None => format!("{}: no failing check", self.title),
        }
    }

    pub fn set_elapsed(&mut self, d: Duration) {
        self.elapsed_ms = Some(d.as_millis());
    }

    /// Human-readable rendering; the same report always renders to the same text unless
    /// timing was recorded.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "== {}", self.title);
        for c in &self.checks {
            let _ = writeln!(out, "{}", render_check(c));
        }
        let summary = if self.passed() { "PASS" } else { "FAIL" };
        let failed = self.checks.iter().filter(|c| c.status == Status::Fail).count();
        let _ = write!(out, "summary: {summary} ({} checks, {failed} failed)", self.checks.len());
        if let Some(ms) = self.elapsed_ms {
            let _ = write!(out, " in {ms} ms");
        }
        out.push('\n');
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn render_check(c: &Check) -> String {
    let tag = match c.status {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Info => "INFO",
    };
    let mut line = format!("[{tag}] {}", c.id);
    if let Some(t) = &c.counterexample {
        let _ = write!(line, " at ({})", t.join(", "));
    }
    if let Some(d) = &c.detail {
        let _ = write!(line, ": {d}");
    }
    for (k, v) in &c.values {
        let _ = write!(line, " {k}={v}");
    }
    line
}
