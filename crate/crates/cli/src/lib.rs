//! Batch runner: resolves a subcommand against its config table and flags,
//! dispatches to the library, and writes one CSV or JSON artifact.

pub mod artifact;
pub mod cli;
pub mod config;
pub mod error;
pub mod parse;
pub mod run;

pub use artifact::{Artifact, Cell, Metadata, Payload, SCHEMA_VERSION};
pub use cli::{Cli, Command, CommonArgs, OUT_DIR_ENV};
pub use config::{ConfigFile, Experiment, ExperimentConfig, Format};
pub use error::{CliError, CliResult};
pub use run::{execute, run};
