//! Library side of the `stabc` command-line tool.

#![forbid(unsafe_code)]

pub mod commands;
pub mod error;
pub mod numfmt;
pub mod statefile;
pub mod verify;

pub use error::{CliError, CliResult};
