//! Front-end for the comparison checkers: space and suite files, suite
//! execution and deterministic reports.

pub mod error;
pub mod load;
pub mod oracle;
pub mod report;
pub mod suite;

pub use error::{CliError, Result};
pub use load::{load_spec, load_suite, spec_to_toml};
pub use suite::{exit_code, run_suite, CheckSpec, Overrides, SuiteConfig};

/// Exit status for unusable input.
pub const EXIT_USAGE: i32 = 3;
