//! Pass/fail bookkeeping shared by all verifiers.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    OpenCase,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::OpenCase => "open-case",
        })
    }
}

/// Accumulated result of one verifier: number of instances checked,
/// failure witnesses, open-case witnesses and an optional skip reason.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub checked: usize,
    pub failures: Vec<String>,
    pub open_cases: Vec<String>,
    pub notes: Vec<String>,
    pub skipped: Option<String>,
}

impl Outcome {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn skipped(reason: impl Into<String>) -> Self {
        Outcome { skipped: Some(reason.into()), ..Default::default() }
    }

    /// Record one instance; the witness closure runs only on failure.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) -> bool {
        self.checked += 1;
        if !ok {
            self.failures.push(witness());
        }
        ok
    }

    pub fn fail(&mut self, witness: impl Into<String>) {
        self.checked += 1;
        self.failures.push(witness.into());
    }

    pub fn open_case(&mut self, witness: impl Into<String>) {
        self.open_cases.push(witness.into());
    }

    /// Informational record that does not affect the status.
    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn merge(&mut self, other: Outcome) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self.open_cases.extend(other.open_cases);
        self.notes.extend(other.notes);
        if self.skipped.is_none() {
            self.skipped = other.skipped;
        }
    }

    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn status(&self) -> Status {
        if !self.failures.is_empty() {
            Status::Fail
        } else if self.skipped.is_some() && self.checked == 0 {
            Status::Skipped
        } else if !self.open_cases.is_empty() {
            Status::OpenCase
        } else {
            Status::Pass
        }
    }
}
