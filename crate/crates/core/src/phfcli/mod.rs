pub mod commands;
pub mod latex;
pub mod serial;

pub use commands::{run, Cli, Outcome};
