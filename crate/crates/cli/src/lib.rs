//! Command-line front end: code descriptors, share files and the
//! `sparsepm` subcommands.

pub mod commands;
pub mod descriptor;
pub mod share;

pub use commands::{run, Cli};
