//! Command-line front end for `kanter-core`: argument handling, CSV/JSON
//! output and a thread pool for Monte Carlo chunks.

pub mod app;
pub mod config;
pub mod output;
pub mod runner;

use clap::Parser;

pub use app::{run, ExitStatus};
pub use config::{Cli, CliConfig};

/// Parses `args` (including the program name) and runs the command.
pub fn main_with_args<I, T>(args: I) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitStatus::Failure
            } else {
                ExitStatus::Ok
            };
        }
    };
    match CliConfig::from_cli(cli) {
        Ok(config) => run(&config),
        Err(e) => {
            eprintln!("error: {e}");
            ExitStatus::Failure
        }
    }
}
