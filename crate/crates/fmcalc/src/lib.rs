//! File formats, configuration, verification suites and the `fmcalc`
//! command line on top of `fmcalc-core`.

pub mod cli;
pub mod config;
pub mod error;
pub mod json;
pub mod suites;

pub use cli::run;
pub use error::{CliError, CliResult};
