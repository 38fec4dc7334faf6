//! `boolgate`: boolean functions to permutation-matrix gates and back.

mod commands;
mod config;
mod error;
mod render;

use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;

use crate::config::{Args, JobConfig};
use crate::error::{CliError, EXIT_PARSE};

/// Writes through a temporary file in the target directory and renames on
/// success, so failed runs leave nothing behind.
fn write_atomically(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let context = path.display().to_string();
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(&context, e))?;
    tmp.write_all(contents.as_bytes())
        .map_err(|e| CliError::io(&context, e))?;
    tmp.persist(path)
        .map_err(|e| CliError::io(&context, e.error))?;
    Ok(())
}

fn execute(args: Args) -> Result<(), CliError> {
    let cfg = JobConfig::try_from(args)?;
    let output = commands::run(&cfg)?;
    match &cfg.out {
        Some(path) => write_atomically(path, &output),
        None => io::stdout()
            .write_all(output.as_bytes())
            .map_err(|e| CliError::io("stdout", e)),
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.to_string();
            let line = rendered.lines().next().unwrap_or("invalid arguments");
            eprintln!("boolgate: {line}");
            return ExitCode::from(EXIT_PARSE);
        }
    };
    match execute(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("boolgate: {e}");
            ExitCode::from(e.code)
        }
    }
}
