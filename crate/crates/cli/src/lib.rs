//! Library side of the `sunada` binary: argument types, command runners
//! and output formatting, exposed so tests can call commands in-process.

pub mod args;
pub mod commands;
pub mod error;
pub mod output;

pub use commands::run;
pub use error::CliError;
