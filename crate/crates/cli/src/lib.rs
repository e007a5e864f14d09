//! Command-line front end for `stieltjes-core`: argument parsing, run
//! configuration, JSON/CSV file formats and the subcommand drivers.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod formats;

pub use error::{CliError, ExitStatus};
