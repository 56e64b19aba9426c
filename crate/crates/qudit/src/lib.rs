//! Command-line front end for `qudit-core`: JSON state files, CSV scans and exports.
//!
//! The binary is a thin wrapper over [`main_with_args`]; everything it does is reachable
//! from here so the commands can be driven from tests.

pub mod cli;
pub mod commands;
pub mod error;
pub mod schema;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;

pub use cli::Cli;
pub use error::CliError;

/// Parses `args` (program name first), runs the command and returns the exit status.
/// Errors are reported on standard error as a single JSON object.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return 0;
        }
        Err(e) => {
            let err = CliError::Usage(e.render().to_string().trim_end().to_string());
            eprintln!("{}", err.to_json());
            return err.exit_code();
        }
    };
    match commands::run(&cli) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("{}", err.to_json());
            err.exit_code()
        }
    }
}
