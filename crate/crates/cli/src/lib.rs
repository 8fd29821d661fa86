//! Command-line front end: level tables, family splits, crossings,
//! wavefunction and path samples, and shooting verification reports, each
//! emitted as JSON, CSV or aligned text.
//!
//! Exit codes: 0 success, 1 usage error, 2 verification failed,
//! 3 numerical failure.

// `!(x > 0)` rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod format;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

use args::{Cli, Command, Format, OutputArgs};
use commands::Rendered;
use format::round_floats;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFICATION_FAILED: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl From<ptmorse::Error> for CliError {
    fn from(e: ptmorse::Error) -> Self {
        use ptmorse::Error::*;
        match e {
            Domain(_) | Index(_) => CliError::Usage(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = stdout.write_all(text.as_bytes());
                    if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                        EXIT_USAGE
                    } else {
                        EXIT_OK
                    }
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let (name, out, result) = dispatch(&cli.command);
    let rendered = match result {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    let text = match emit(name, out.format, &rendered) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    let written = match &out.output {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| format!("cannot write output: {e}")),
    };
    if let Err(msg) = written {
        let _ = writeln!(stderr, "error: {msg}");
        return EXIT_USAGE;
    }
    if rendered.verification_failed {
        let _ = writeln!(stderr, "verification failed");
        return EXIT_VERIFICATION_FAILED;
    }
    EXIT_OK
}

fn dispatch(command: &Command) -> (&'static str, &OutputArgs, Result<Rendered, CliError>) {
    match command {
        Command::Spectrum(a) => ("spectrum", &a.out, commands::spectrum_cmd(a)),
        Command::Families(a) => ("families", &a.out, commands::families_cmd(a)),
        Command::Crossings(a) => ("crossings", &a.out, commands::crossings_cmd(a)),
        Command::Table(a) => ("table", &a.out, commands::table_cmd(a)),
        Command::HoSpectrum(a) => ("ho-spectrum", &a.out, commands::ho_spectrum_cmd(a)),
        Command::Wavefunction(a) => ("wavefunction", &a.out, commands::wavefunction_cmd(a)),
        Command::Contour(a) => ("contour", &a.out, commands::contour_cmd(a)),
        Command::Verify(a) => ("verify", &a.out, commands::verify_cmd(a)),
    }
}

fn emit(command: &str, format: Format, r: &Rendered) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => {
            let doc = json!({
                "command": command,
                "params": r.params,
                "data": r.data,
                "version": env!("CARGO_PKG_VERSION"),
            });
            serde_json::to_string_pretty(&round_floats(doc)).expect("json serializes") + "\n"
        }
        Format::Csv => r
            .table
            .to_csv()
            .map_err(|e| CliError::Numerical(format!("csv: {e}")))?,
        Format::Text => r.text.clone().unwrap_or_else(|| r.table.to_text()),
    })
}
