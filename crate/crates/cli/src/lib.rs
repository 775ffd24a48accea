//! Command-line front end: single values, reference tables, the scan
//! around n = 137 and identity checks.

pub mod args;
pub mod commands;
pub mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use stieltjes_core::Error;

use args::{Cli, Command};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_ACCURACY: u8 = 2;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numeric(Error),
    Io(std::io::Error),
}

impl CliError {
    pub(crate) fn usage(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Numeric(e) if e.is_accuracy_failure() => EXIT_ACCURACY,
            CliError::Io(_) => EXIT_ACCURACY,
            _ => EXIT_USAGE,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Numeric(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Numeric(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Parses `argv`, runs the command and writes to `out`/`err`; returns the
/// process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match dispatch(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: &Command, out: &mut dyn Write) -> Result<u8, CliError> {
    match cmd {
        Command::Compute(a) => commands::compute(a)?.write(a.common.format, out)?,
        Command::Table(a) => commands::table(a)?.write(a.common.format, out)?,
        Command::Scan(a) => commands::scan(a)?.write(a.common.format, out)?,
        Command::Verify(a) => {
            let (t, ok) = commands::verify(a)?;
            t.write(a.format, out)?;
            if !ok {
                return Ok(EXIT_ACCURACY);
            }
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_by_error_kind() {
        let acc = CliError::from(Error::Accuracy {
            op: "mu_n",
            value: 1.0,
            error_estimate: 1.0,
            tolerance: 0.1,
        });
        assert_eq!(acc.exit_code(), EXIT_ACCURACY);
        let conv = CliError::from(Error::Convergence {
            op: "gamma_oracle",
            iterations: 64,
            residual: 1.0,
        });
        assert_eq!(conv.exit_code(), EXIT_ACCURACY);
        let dom = CliError::from(Error::Domain {
            op: "gamma_leading_order",
            detail: String::new(),
        });
        assert_eq!(dom.exit_code(), EXIT_USAGE);
    }

    #[test]
    fn run_writes_records() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(["stieltjes", "compute", "--n", "20"], &mut out, &mut err);
        assert_eq!(code, EXIT_OK);
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("20,m_term,3,4.652039"), "{text}");
        assert!(err.is_empty());
    }
}
