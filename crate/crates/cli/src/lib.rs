//! Session-file parser, command dispatcher and report emitter for `folichar`.

pub mod commands;
pub mod error;
pub mod report;
pub mod session;
pub mod syntax;

pub use commands::{run, Command, Options, Outcome};
pub use error::CliError;
pub use session::{Session, Value};
