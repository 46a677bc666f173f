//! File formats and subcommands of the `splitlab` tool.

pub mod commands;
pub mod error;
pub mod formats;
pub mod manifest;

pub use error::CliError;
