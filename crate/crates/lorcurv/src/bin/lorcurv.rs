//! Command-line front end.
//!
//! Exit status: 0 ok, 2 unreadable input or unknown family, 3 invalid datum,
//! 4 analysis inconsistency or catalog mismatch.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lorcurv::catalog::{self, verify_all};
use lorcurv::io::Document;
use lorcurv::report::analyze;
use lorcurv::scalar::set_tolerance;
use lorcurv::{Error, Mode, Scalar, Q};

#[derive(Parser)]
#[command(name = "lorcurv", version, about = "Curvature analysis of Lorentzian metric Lie algebras and homogeneous pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Float => Mode::Float,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Analyse one JSON document (see schema/input.schema.json).
    Analyze {
        file: PathBuf,
        /// Defaults to the document's own mode.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Also write the full report as JSON.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Re-derive the catalog claims on their sample points.
    VerifyCatalog {
        /// Family id; `*` matches any run of characters.
        #[arg(long, value_name = "ID")]
        family: Option<String>,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
}

/// Prints lines, stopping quietly if stdout is closed (e.g. piped to `head`).
fn emit(lines: &[String]) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    for line in lines {
        if writeln!(out, "{line}").is_err() {
            return;
        }
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code() as u8)
}

fn write_json(path: &Path, value: &impl serde::Serialize) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Invalid(e.to_string()))?;
    std::fs::write(path, text + "\n").map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn run_analyze<S: Scalar>(doc: &Document, json: Option<&Path>) -> Result<(), Error> {
    let subject = doc.subject::<S>()?;
    let analysis = analyze(&subject)?;
    let statement = doc.name.as_deref().and_then(|n| catalog::find(n).ok()).map(|f| f.statement.to_string());
    let report = analysis.report(&subject, statement);
    emit(&report.summary_lines());
    if let Some(path) = json {
        write_json(path, &report)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(t) = std::env::var("LORCURV_TOL") {
        match t.trim().parse::<f64>() {
            Ok(x) if x.is_finite() && x > 0.0 => set_tolerance(x),
            _ => return fail(&Error::Parse(format!("LORCURV_TOL=`{t}` is not a positive number"))),
        }
    }
    match cli.command {
        Command::Analyze { file, mode, json } => {
            let text = match std::fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => return fail(&Error::Parse(format!("{}: {e}", file.display()))),
            };
            let doc = match Document::parse(&text) {
                Ok(d) => d,
                Err(e) => return fail(&e),
            };
            let res = match mode.map(Mode::from).unwrap_or(doc.mode) {
                Mode::Exact => run_analyze::<Q>(&doc, json.as_deref()),
                Mode::Float => run_analyze::<f64>(&doc, json.as_deref()),
            };
            match res {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(&e),
            }
        }
        Command::VerifyCatalog { family, mode, json } => {
            let summary = match verify_all(mode.into(), family.as_deref()) {
                Ok(s) => s,
                Err(e) => return fail(&e),
            };
            emit(&summary.text());
            if let Some(path) = json {
                if let Err(e) = write_json(&path, &summary) {
                    return fail(&e);
                }
            }
            if summary.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(4)
            }
        }
    }
}
