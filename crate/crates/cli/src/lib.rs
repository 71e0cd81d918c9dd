//! Script language, runner and example corpus for the `fibrant` tool.

pub mod ast;
pub mod corpus;
pub mod parser;
pub mod report;
pub mod runner;

pub use parser::{parse_script, ParseError};
pub use report::Report;
pub use runner::{run_script, Config, RunError};
