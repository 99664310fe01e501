//! Pass/fail records shared by all checks.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A computed comparison that is reported rather than asserted.
    Finding,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Finding => "FINDING",
            Status::Skipped => "SKIPPED",
        };
        f.write_str(s)
    }
}

/// Outcome of one named check over a number of test cases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub status: Status,
    pub cases: usize,
    pub failures: usize,
    /// First failing case, if any.
    pub witness: Option<String>,
    pub details: Vec<String>,
}

impl CheckReport {
    pub fn new(name: &str) -> Self {
        CheckReport {
            name: name.to_string(),
            status: Status::Pass,
            cases: 0,
            failures: 0,
            witness: None,
            details: Vec::new(),
        }
    }

    pub fn skipped(name: &str, reason: &str) -> Self {
        let mut r = CheckReport::new(name);
        r.status = Status::Skipped;
        r.details.push(reason.to_string());
        r
    }

    /// Record one case; `describe` is only called for failures.
    pub fn case<F: FnOnce() -> String>(&mut self, ok: bool, describe: F) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            self.status = Status::Fail;
            if self.witness.is_none() {
                self.witness = Some(describe());
            }
        }
    }

    pub fn fail(&mut self, msg: String) {
        self.case(false, || msg);
    }

    pub fn note(&mut self, msg: String) {
        self.details.push(msg);
    }

    /// Fold the cases of another report into this one.
    pub fn absorb(&mut self, other: &CheckReport) {
        self.cases += other.cases;
        self.failures += other.failures;
        if other.status == Status::Fail {
            self.status = Status::Fail;
            if self.witness.is_none() {
                self.witness = other.witness.as_ref().map(|w| format!("{}: {w}", other.name));
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} ({} cases", self.status, self.name, self.cases)?;
        if self.failures > 0 {
            write!(f, ", {} failed", self.failures)?;
        }
        write!(f, ")")?;
        if let Some(w) = &self.witness {
            write!(f, " witness: {w}")?;
        }
        Ok(())
    }
}
