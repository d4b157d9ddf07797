//! Structured pass/fail reports produced by the verification routines.

use serde::{Deserialize, Serialize};
use std::fmt;

/// One named check with its verdict and a short diagnostic.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub details: String,
}

/// A list of checks; the report passes iff every check passes.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, details: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            details: details.into(),
        });
    }

    pub fn pass(&mut self, name: impl Into<String>, details: impl Into<String>) {
        self.push(name, true, details);
    }

    pub fn fail(&mut self, name: impl Into<String>, details: impl Into<String>) {
        self.push(name, false, details);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Merge another report in, prefixing its check names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}.{}", c.name);
            self.checks.push(c);
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} {} — {}",
                if c.passed { "ok  " } else { "FAIL" },
                c.name,
                c.details
            )?;
        }
        write!(
            f,
            "{}: {} checks",
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks.len()
        )
    }
}
