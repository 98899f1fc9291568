//! Command-line front end: instance files, solver runs, experiments and bound checks.

pub mod commands;
pub mod error;
pub mod instance_file;

pub use commands::{run, Cli};
pub use error::{CliError, CliResult};
