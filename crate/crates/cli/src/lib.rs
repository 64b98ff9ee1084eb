//! Command-line runner for the law suites: loads a finite table file or a
//! built-in example, runs the selected suites and prints a report.

pub mod config;
pub mod format;
pub mod report;
pub mod run;

pub use config::{Backend, ExampleSource, Suite, SuiteConfig};
pub use report::RunReport;
pub use run::{run, RunError};

/// Process exit status when every law passes.
pub const EXIT_PASS: u8 = 0;
/// Process exit status when some law fails.
pub const EXIT_FAIL: u8 = 1;
/// Process exit status for configuration and load errors.
pub const EXIT_CONFIG: u8 = 2;
