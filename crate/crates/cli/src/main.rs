//! Command line front end: validate workspace documents, build derived
//! structures, and run the named check suites.
//!
//! Exit codes: 0 all checks pass, 1 a law fails or the input is semantically
//! wrong, 2 the document does not parse, 3 the document lacks the structures
//! a suite needs, 4 a size cap was exceeded.

mod construct;
mod suites;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qk_core::doctrine::Caps;
use qk_core::error::{Error, Result};
use qk_core::report::Report;
use qk_core::workspace::{parse_document, validate_all, Workspace};

#[derive(Parser)]
#[command(name = "qk", about = "Quantaloid-enriched order theory at desk scale")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Load a document and report every law check
    Validate { file: PathBuf },
    /// Derive a structure from a named definition and emit it as a document
    Construct {
        verb: Verb,
        /// Definition to start from
        name: String,
        file: PathBuf,
        /// Write the document here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a check suite over every eligible definition in a document
    Check {
        suite: Suite,
        file: PathBuf,
        /// Largest hom lattice the doctrine suite accepts
        #[arg(long, default_value_t = 4)]
        max_hom: usize,
        /// Most objects the doctrine suite accepts
        #[arg(long, default_value_t = 3)]
        max_obj: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Verb {
    /// Split-idempotent completion of a quantaloid
    Idm,
    /// Presheaf category of a category
    PresheafCategory,
    /// Cauchy completion of a category
    CauchyCompletion,
    /// Category of elements of a module
    CategoryOfModule,
    /// Module extracted from a cocomplete skeletal category
    ModuleOfCategory,
    /// Centre of a quantaloid, as a quantale
    Centre,
    /// One-object quantaloid on a quantale
    Suspension,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Suite {
    Lemma1,
    Corollary3,
    Lemma4,
    Theorem6,
    Example3,
    Prop8,
    Prop10,
    Kz,
}

impl Suite {
    fn as_str(self) -> &'static str {
        match self {
            Suite::Lemma1 => "lemma1",
            Suite::Corollary3 => "corollary3",
            Suite::Lemma4 => "lemma4",
            Suite::Theorem6 => "theorem6",
            Suite::Example3 => "example3",
            Suite::Prop8 => "prop8",
            Suite::Prop10 => "prop10",
            Suite::Kz => "kz",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.cmd {
        Cmd::Validate { file } => cmd_validate(&file),
        Cmd::Construct { verb, name, file, out } => {
            construct::run(verb, &name, &file, out.as_deref())
        }
        Cmd::Check { suite, file, max_hom, max_obj } => {
            cmd_check(suite, &file, Caps { max_hom, max_obj })
        }
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        Error::MissingFixture(_) => 3,
        Error::Resource(_) => 4,
        _ => 1,
    }
}

pub fn load_workspace(file: &Path) -> Result<Workspace> {
    let text = fs::read_to_string(file)
        .map_err(|e| Error::Parse(format!("{}: {e}", file.display())))?;
    Workspace::load(&parse_document(&text)?)
}

fn cmd_validate(file: &Path) -> Result<bool> {
    let ws = load_workspace(file)?;
    let reports = validate_all(&ws);
    let pass = reports.iter().all(|(_, r)| r.all_pass());
    print_reports("validate", None, &reports, pass);
    Ok(pass)
}

fn cmd_check(suite: Suite, file: &Path, caps: Caps) -> Result<bool> {
    let ws = load_workspace(file)?;
    let reports = suites::run(suite, &ws, caps)?;
    let pass = reports.iter().all(|(_, r)| r.all_pass());
    print_reports("check", Some(suite.as_str()), &reports, pass);
    Ok(pass)
}

/// JSON on stdout, a readable summary on stderr.
fn print_reports(command: &str, suite: Option<&str>, reports: &[(String, Report)], pass: bool) {
    let mut json = serde_json::json!({
        "command": command,
        "pass": pass,
        "reports": reports
            .iter()
            .map(|(subject, r)| {
                serde_json::json!({
                    "subject": subject,
                    "title": r.title,
                    "checks": r.checks,
                })
            })
            .collect::<Vec<_>>(),
    });
    if let Some(s) = suite {
        json["suite"] = serde_json::Value::String(s.to_string());
    }
    println!("{}", serde_json::to_string_pretty(&json).expect("report serialization"));

    for (subject, r) in reports {
        let ok = r.checks.iter().filter(|c| c.pass).count();
        eprintln!("{subject}: {}: {ok}/{} checks pass", r.title, r.checks.len());
        for c in r.failures() {
            eprintln!("  FAIL {}: {}", c.law, c.witness.as_deref().unwrap_or(""));
        }
    }
    eprintln!("{}", if pass { "PASS" } else { "FAIL" });
}
