//! Command-line front end for the `semicoarse` library: file formats,
//! JSON reports and the subcommands of the `semicoarse` binary.

pub mod args;
pub mod commands;
pub mod error;
pub mod format;
pub mod report;

pub use args::Cli;
pub use commands::{run, Outcome};
pub use error::{CliError, CliResult, EXIT_BUDGET, EXIT_INPUT, EXIT_OK, EXIT_PRECONDITION};
