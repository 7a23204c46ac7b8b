//! Library surface of the `dressed-trap-kit` command-line tool: run
//! configurations, command implementations, and the file formats they
//! emit. The binary in `main.rs` is a thin argument-parsing wrapper so
//! the whole pipeline stays testable in-process.

pub mod commands;
pub mod config;
pub mod error;
pub mod format;
pub mod output;

pub use commands::{cmd_derive, cmd_grid, cmd_simulate, cmd_track};
pub use config::{parse_config, parse_config_str, ConfigKind, RunSpec};
pub use error::{CliError, ExitCode};
