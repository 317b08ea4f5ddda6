//! Command-line front end for `dualinv-core`.
//!
//! Every command reads JSON matrix documents `{"real": [[...]], "dual": [[...]]}`
//! (`dual` defaults to zero) and writes one JSON report. Exit codes:
//! 0 success, 2 an inverse or solution does not exist, 3 bad input,
//! 4 numerical failure.

mod args;
mod commands;
mod io;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::Parser;
use dualinv_core::{Error, Tolerances};
use serde_json::{json, Value};

pub use args::Cli;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ABSENT: i32 = 2;
pub const EXIT_USAGE: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;

#[derive(Debug)]
pub(crate) struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    pub(crate) fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ShapeMismatch { .. }
            | Error::NotSquare { .. }
            | Error::BadLength { .. }
            | Error::NonFinite { .. }
            | Error::Empty
            | Error::InvalidTolerance { .. }
            | Error::BadShapeParams(_) => EXIT_USAGE,
            Error::NoGroupInverse { .. }
            | Error::NoCoreInverse { .. }
            | Error::HypothesisFailed { .. }
            | Error::NoDdgi
            | Error::NoDggi
            | Error::NoDmpgi
            | Error::NoDcgi
            | Error::Inconsistent { .. } => EXIT_ABSENT,
            Error::DecompositionFailure { .. } => EXIT_NUMERIC,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// A finished command: exit code and report.
pub(crate) struct Outcome {
    pub(crate) code: i32,
    pub(crate) doc: Value,
}

fn failure_doc(command: &str, f: &Failure) -> Value {
    json!({
        "command": command,
        "error": {"code": f.code, "message": f.message},
    })
}

fn guarded(command: &str, f: impl FnOnce() -> Result<Outcome, Failure>) -> Outcome {
    match panic::catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(outcome)) => outcome,
        Ok(Err(failure)) => Outcome {
            code: failure.code,
            doc: failure_doc(command, &failure),
        },
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "internal failure".to_string());
            let failure = Failure {
                code: EXIT_NUMERIC,
                message,
            };
            Outcome {
                code: EXIT_NUMERIC,
                doc: failure_doc(command, &failure),
            }
        }
    }
}

fn batch_files(dir: &Path) -> Result<Vec<PathBuf>, Failure> {
    let entries = fs::read_dir(dir)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

fn run_batch(cli: &Cli, tol: &Tolerances, dir: &Path) -> Outcome {
    let name = commands::name(&cli.command);
    guarded(name, || {
        if !commands::single_input(&cli.command) {
            return Err(Failure::usage(format!(
                "--batch is not available for `{name}`"
            )));
        }
        let mut code = EXIT_OK;
        let mut items = Vec::new();
        for file in batch_files(dir)? {
            let one = guarded(name, || commands::execute(cli, tol, Some(&file)));
            code = code.max(one.code);
            let label = file.file_name().map(|f| f.to_string_lossy().into_owned());
            items.push(json!({"file": label, "exit": one.code, "report": one.doc}));
        }
        Ok(Outcome {
            code,
            doc: json!({"command": name, "batch": items}),
        })
    })
}

/// Parses `args` (program name first), runs the command and writes the
/// report to `out` or `--output`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    eprint!("{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let name = commands::name(&cli.command);
    let outcome = match Tolerances::new(cli.global.tol_rank, cli.global.tol_resid) {
        Err(e) => {
            let f = Failure::from(e);
            Outcome {
                code: f.code,
                doc: failure_doc(name, &f),
            }
        }
        Ok(tol) => match &cli.global.batch {
            Some(dir) => run_batch(&cli, &tol, dir),
            None => guarded(name, || commands::execute(&cli, &tol, None)),
        },
    };
    if let Some(f) = outcome.doc.get("error") {
        if let Some(m) = f.get("message").and_then(Value::as_str) {
            eprintln!("dualinv {name}: {m}");
        }
    }
    let bytes = io::render(&outcome.doc);
    let written = match &cli.global.output {
        Some(path) => fs::write(path, &bytes).map_err(|e| e.to_string()),
        None => out.write_all(&bytes).map_err(|e| e.to_string()),
    };
    match written {
        Ok(()) => outcome.code,
        Err(e) => {
            eprintln!("dualinv {name}: cannot write report: {e}");
            EXIT_USAGE
        }
    }
}
