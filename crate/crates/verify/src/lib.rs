//! Batch runner for the yqn-core checks: configuration, JSON formats and
//! versioned reports.

pub mod config;
pub mod json;
pub mod report;
pub mod run;

pub use config::{ConfigError, RunConfig, Suite};
pub use report::{write_atomic, Record, Report};
