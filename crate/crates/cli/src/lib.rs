//! Command-line front end: configuration, reports and the verification
//! suite.

pub mod checks;
pub mod commands;
pub mod config;
pub mod report;

pub use commands::{execute, run_verify_suite, CliError};
pub use config::{Cli, RunConfig, ENV_PREFIX};
pub use report::{CheckResult, Report, Verdict, SCHEMA};
