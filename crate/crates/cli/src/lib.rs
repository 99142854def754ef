//! Command-line front end for the `auk` binary.

pub mod args;
pub mod commands;
pub mod error;
pub mod load;
pub mod report;
pub mod text;

use clap::Parser;

pub use commands::{Outcome, EXIT_ERROR, EXIT_FAIL, EXIT_OK};
pub use error::CliError;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match args::Cli::try_parse_from(args) {
        Ok(cli) => commands::execute(cli.command),
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: rendered,
                    code: EXIT_ERROR,
                }
            } else {
                Outcome {
                    stdout: rendered,
                    stderr: String::new(),
                    code: EXIT_OK,
                }
            }
        }
    }
}
