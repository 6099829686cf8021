//! The `geo3` command-line tool as a library: [`run`] takes argv and writers
//! and returns the process exit code.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 numerical or domain error,
//! 3 failed invariant check (written after the report).

pub mod args;
pub mod commands;
pub mod output;
pub mod source;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

use args::{Cli, Command};
use source::{CliError, Ctx, EXIT_CHECK, EXIT_USAGE};

/// Parses `argv`, runs the subcommand and writes its report to `out` (or to
/// `--out`). Diagnostics go to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(outcome) => {
            let text = outcome.report.render(cli.format);
            let written = match &cli.out {
                Some(path) => std::fs::write(path, text).map_err(|e| {
                    Ctx { command: "output" }.usage(format!("cannot write {}: {e}", path.display()))
                }),
                None => out.write_all(text.as_bytes()).map_err(|e| Ctx { command: "output" }.usage(e.to_string())),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "{e}");
                return e.code;
            }
            if outcome.check_failed {
                let _ = writeln!(err, "error: {}: invariant check failed", outcome.report.name);
                return EXIT_CHECK;
            }
            0
        }
        Err(e) => {
            let _ = writeln!(err, "{e}");
            e.code
        }
    }
}

fn dispatch(cli: &Cli) -> Result<commands::Outcome, CliError> {
    match &cli.command {
        Command::Curve { cmd } => commands::curve::run(cmd),
        Command::Strip { cmd } => commands::strip::run(cmd),
        Command::Surface { cmd } => commands::surface::run(cmd, cli.tol),
        Command::Geodesic { cmd } => commands::geodesic::run(cmd, cli.tol),
        Command::Catalog { cmd } => commands::catalog::run(cmd),
        Command::Eval(args) => commands::eval::run(args),
    }
}
