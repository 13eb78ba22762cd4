//! Instance and report formats, verification suites and the `kdq` command line.

pub mod cli;
pub mod error;
pub mod instance;
pub mod report;
pub mod suites;

pub use error::{HarnessError, Result};
pub use instance::{emit_instance, parse_instance, Instance};
pub use report::{emit_report, ReportFormat};
pub use suites::{run_suite, SuiteConfig, SuiteReport, SUITE_NAMES};
