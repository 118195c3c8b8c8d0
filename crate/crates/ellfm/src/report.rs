//! Structured results of identity checks.

use serde::Serialize;

/// Result of a single check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    /// A diagnostic value that is reported but not judged.
    Info,
}

/// One named identity together with its outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub statement: String,
    pub outcome: Outcome,
    /// Whether a failure of this check makes the whole report fail.
    pub gating: bool,
    pub detail: String,
}

impl Check {
    /// A gating check that passes exactly when `ok` holds.
    pub fn gate(name: &str, statement: &str, ok: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            statement: statement.into(),
            outcome: if ok { Outcome::Pass } else { Outcome::Fail },
            gating: true,
            detail: detail.into(),
        }
    }

    /// A non-gating check: evaluated and reported, never fails the report.
    pub fn informational(name: &str, statement: &str, ok: bool, detail: impl Into<String>) -> Self {
        Self { gating: false, ..Self::gate(name, statement, ok, detail) }
    }

    /// A pure diagnostic with no pass/fail judgement.
    pub fn info(name: &str, statement: &str, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            statement: statement.into(),
            outcome: Outcome::Info,
            gating: false,
            detail: detail.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

/// A named collection of checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Self { suite: suite.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// True when every gating check passes.
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| !c.gating || c.passed())
    }

    /// The gating checks that failed.
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.gating && !c.passed())
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn only_gating_failures_fail_a_report() {
        let mut r = Report::new("demo");
        r.push(Check::gate("a", "1 = 1", true, ""));
        r.push(Check::informational("b", "1 = 2", false, ""));
        r.push(Check::info("c", "value", "42"));
        assert!(r.ok());
        r.push(Check::gate("d", "2 = 3", false, ""));
        assert!(!r.ok());
        assert_eq!(r.failures().count(), 1);
        assert_eq!(r.find("c").unwrap().outcome, Outcome::Info);
    }
}
