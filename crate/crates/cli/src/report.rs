//! Run reports: a header echoing the configuration, then one
//! tab-separated record per law or value,
//!
//! ```text
//! suite<TAB>law<TAB>status<TAB>residual<TAB>counterexample
//! ```
//!
//! and a final `overall` line. Records keep the order in which suites and
//! laws were run, so equal configurations give byte-identical reports.

use std::fmt;

use algebroid_core::LawReport;

use crate::config::{Suite, SuiteConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// A computed quantity, not a law; never affects the outcome.
    Value,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Value => "value",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub suite: Suite,
    pub law: String,
    pub status: Status,
    /// The residual of a law, or the quantity of a value record.
    pub residual: String,
    pub counterexample: Option<String>,
}

/// Tabs and newlines would break the record layout.
fn field(s: &str) -> String {
    s.replace(['\t', '\n', '\r'], " ")
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}\t{}",
            self.suite,
            field(&self.law),
            self.status.as_str(),
            self.residual,
            self.counterexample.as_deref().map_or_else(|| "-".to_string(), field)
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub config: SuiteConfig,
    /// Effective tolerance of law checks.
    pub tolerance: f64,
    pub records: Vec<Record>,
}

impl RunReport {
    pub fn new(config: SuiteConfig, tolerance: f64) -> Self {
        RunReport {
            config,
            tolerance,
            records: Vec::new(),
        }
    }

    pub fn push_law(&mut self, suite: Suite, report: &LawReport) {
        self.records.push(Record {
            suite,
            law: report.law.clone(),
            status: if report.passed { Status::Pass } else { Status::Fail },
            residual: format!("{:.3e}", report.residual),
            counterexample: report.counterexample.clone(),
        });
    }

    pub fn push_laws<'a>(&mut self, suite: Suite, reports: impl IntoIterator<Item = &'a LawReport>) {
        for r in reports {
            self.push_law(suite, r);
        }
    }

    pub fn push_value(&mut self, suite: Suite, name: impl Into<String>, value: impl fmt::Display) {
        self.records.push(Record {
            suite,
            law: name.into(),
            status: Status::Value,
            residual: value.to_string(),
            counterexample: None,
        });
    }

    /// True iff no law record failed.
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.status != Status::Fail)
    }

    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| r.status == Status::Fail).count()
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.config;
        writeln!(f, "backend\t{}", c.backend)?;
        writeln!(f, "example\t{}", c.example)?;
        writeln!(f, "seed\t{}", c.seed)?;
        writeln!(f, "samples\t{}", c.samples)?;
        if c.backend == crate::config::Backend::Finite {
            writeln!(f, "tolerance\texact")?;
        } else {
            writeln!(f, "tolerance\t{:e}", self.tolerance)?;
        }
        writeln!(f, "suite\tlaw\tstatus\tresidual\tcounterexample")?;
        for r in &self.records {
            writeln!(f, "{r}")?;
        }
        let laws = self.records.iter().filter(|r| r.status != Status::Value).count();
        writeln!(
            f,
            "overall\t{}\t{} of {laws} laws failed",
            if self.passed() { "pass" } else { "fail" },
            self.failures()
        )
    }
}
