//! Command-line front end: `search`, `enumerate` and `experiment`.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 no solution,
//! 3 enumeration round cap reached.

pub mod args;
pub mod commands;
pub mod format;
pub mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use commands::exit;

/// Parses `argv`, runs the command and writes its output. Returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => exit::SUCCESS,
                _ => exit::USAGE,
            };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == exit::SUCCESS { stdout } else { stderr };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let result = match &cli.command {
        Command::Search(args) => commands::search(args),
        Command::Enumerate(args) => commands::enumerate(args),
        Command::Experiment(args) => commands::experiment(args),
    };
    match result {
        Ok(done) => {
            if stdout.write_all(done.stdout.as_bytes()).is_err() {
                return exit::USAGE;
            }
            done.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            exit::USAGE
        }
    }
}
