//! Command-line frontend for [`plumbing_core`]: graph files, JSON and DOT
//! output, realizability table overrides and parallel enumeration.

pub mod cli;
pub mod enumerate;
pub mod formats;

use std::fmt;

/// Exit status for successful commands.
pub const EXIT_OK: i32 = 0;
/// Exit status for unreadable or invalid input.
pub const EXIT_INVALID: i32 = 2;
/// Exit status when a budgeted search returned `Unknown`.
pub const EXIT_UNKNOWN: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Core(plumbing_core::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => f.write_str(msg),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<plumbing_core::Error> for CliError {
    fn from(e: plumbing_core::Error) -> Self {
        CliError::Core(e)
    }
}
