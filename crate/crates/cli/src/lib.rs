//! The `etacong` command line, split out of `main.rs` so the report types can
//! be exercised from tests.

pub mod args;
pub mod commands;
pub mod report;

pub use args::{Cli, Command, Format};
pub use commands::{run, Outcome, UsageError};
