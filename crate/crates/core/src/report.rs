//! Pass/fail tables for invariant suites.

use serde::Serialize;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: impl Into<String>, pass: bool, witness: impl Into<String>) {
        self.checks.push(Check { name: name.into(), pass, witness: witness.into() });
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            if c.witness.is_empty() {
                writeln!(f, "{tag}  {}", c.name)?;
            } else {
                writeln!(f, "{tag}  {}  ({})", c.name, c.witness)?;
            }
        }
        Ok(())
    }
}
