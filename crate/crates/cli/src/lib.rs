//! Library half of the `pretzel` binary: subcommand implementations, the
//! JSON report envelope and the sweep cache.

pub mod cache;
pub mod commands;
pub mod report;

pub use commands::{exit, CliError, Outcome};
pub use report::ReportDocument;
