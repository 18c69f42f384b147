//! Batch front-end: configuration parsing, scenario runs and CSV output.

pub mod config;
pub mod error;
pub mod output;
pub mod run;

pub use config::{parse_config, Mode, NodeSpec, RunConfig};
pub use error::{CliError, ConfigIssue, Result};
pub use output::{read_table, Schema, Table, DENSITY, OSCILLATOR, STRUCTURE_FACTOR};
pub use run::{run, Diagnostics, RunOutcome, MANIFEST};

/// Reads and validates a configuration file.
pub fn load_config(path: impl AsRef<std::path::Path>) -> Result<RunConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    parse_config(&text)
}
