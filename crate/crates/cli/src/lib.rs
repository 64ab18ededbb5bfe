//! Config-driven front end: parse a job file, run the matching pipeline and
//! render the report.

pub mod app;
pub mod config;
pub mod report;
pub mod run;

pub use config::{parse_config, ConfigError, Format, Job, JobConfig, JobMode};
pub use report::Report;
pub use run::{run, Outcome, RunOptions};
