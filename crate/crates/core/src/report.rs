//! Named pass/fail/skip records shared by every verification routine.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

/// An ordered list of checks. A report passes when nothing failed; skipped
/// checks do not count against it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) -> bool {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.checks.push(Check {
            name: name.into(),
            status,
            detail: detail.into(),
        });
        ok
    }

    /// Passes when `bad` is empty, otherwise lists the offenders.
    pub fn require<T: std::fmt::Debug>(&mut self, name: impl Into<String>, bad: &[T]) -> bool {
        let detail = if bad.is_empty() {
            String::new()
        } else {
            format!("{bad:?}")
        };
        self.record(name, bad.is_empty(), detail)
    }

    pub fn skip(&mut self, name: impl Into<String>, reason: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            status: Status::Skipped,
            detail: reason.into(),
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// Folds `other` into a single check called `name`.
    pub fn absorb(&mut self, name: impl Into<String>, other: &Report) -> bool {
        let failed: Vec<&Check> = other
            .checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .collect();
        let detail = failed
            .iter()
            .map(|c| {
                if c.detail.is_empty() {
                    c.name.clone()
                } else {
                    format!("{}: {}", c.name, c.detail)
                }
            })
            .collect::<Vec<_>>()
            .join("; ");
        self.record(name, failed.is_empty(), detail)
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}
