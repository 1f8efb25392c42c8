//! Command-line front end, report formats and the parallel failure-table
//! driver for [`epir_core`].

pub mod commands;
pub mod parallel;
pub mod report;
pub mod transcript;

pub use commands::{CliError, Outcome};
