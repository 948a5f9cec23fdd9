//! Command-line front end: expression parsing, CSV point sets, JSON reports.
//!
//! Exit codes: 0 on success, 2 when the computation ends in a mathematical
//! failure (a failure certificate, a grid not inside `Z(F)`, ...), 1 on usage
//! errors.

mod commands;
mod explain;
pub mod parser;
pub mod points;
mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

pub use commands::{Cli, Command, ExperimentConfig};
pub use parser::{parse_constant, parse_polynomial, ParseError};
pub use points::{load_points, parse_points_csv, points_to_csv, PointsError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                EXIT_OK
            } else {
                EXIT_USAGE
            };
            let _ = e.print();
            return code;
        }
    };
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr().lock();
    let code = commands::execute(cli.command, &mut stdout, &mut stderr);
    let _ = stdout.flush();
    code
}
