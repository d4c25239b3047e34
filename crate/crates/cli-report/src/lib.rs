//! Config parsing, command execution and CSV/text rendering for the `repeater` binary.

mod config;
mod format;
mod run;

pub use config::{parse_config, Command, ConfigError, RunConfig};
pub use format::{grid, sig4};
pub use run::{run, settings, RunError};
