//! Machine-readable verification reports.
//!
//! Every verifier returns a [`Report`]: a list of named checks, each carrying
//! the basis tuples that witness a violation together with the exact residual
//! value there. A report passes iff every witness list is empty. Witness lists
//! are capped (default 10) but the total count is always recorded.

use alloc::string::String;
use alloc::vec::Vec;

pub const DEFAULT_WITNESS_CAP: usize = 10;

/// One violating site: a basis tuple and the exact residual found there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub site: Vec<i64>,
    pub value: String,
}

/// One named check with its witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub witnesses: Vec<Witness>,
    /// Total violations found, including those beyond the cap.
    pub witness_total: usize,
}

impl Check {
    pub fn new(id: impl Into<String>) -> Self {
        Check { id: id.into(), witnesses: Vec::new(), witness_total: 0 }
    }

    pub fn witness(&mut self, site: Vec<i64>, value: impl Into<String>) {
        self.witness_total += 1;
        if self.witnesses.len() < DEFAULT_WITNESS_CAP {
            self.witnesses.push(Witness { site, value: value.into() });
        }
    }

    pub fn passed(&self) -> bool {
        self.witness_total == 0
    }
}

/// A bundle of checks.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report { checks: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// Ids of failing checks, for terse assertions in tests.
    pub fn failing(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed()).map(|c| c.id.as_str()).collect()
    }
}
