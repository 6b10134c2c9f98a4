//! Command-line front end. Exit codes: 0 success, 1 user error (including
//! exhausted generation and a rejected submission), 2 internal error.

use clap::{Parser, Subcommand};
use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use crate::bench::{bench, format_table};
use crate::error::Error;
use crate::exercise::{ExerciseKind, GenParams};
use crate::grader::{grade, serve_reference};
use crate::pipeline::{generate_bundle, Request};
use crate::render::{render_assets, ExerciseBundle};

#[derive(Parser, Debug)]
#[command(name = "exgen", version, about = "Generate, render, and grade individual programming exercises")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Generate an exercise bundle for one student.
    Gen {
        #[arg(long)]
        student: String,
        #[arg(long)]
        slot: String,
        #[arg(long, default_value_t = 0)]
        variant: u64,
        #[arg(long)]
        kind: ExerciseKind,
        /// JSON file with generator parameters.
        #[arg(long)]
        params: Option<PathBuf>,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a bundle's statement and assets (.tex, .dot, .txt) to a directory.
    Render {
        #[arg(long)]
        bundle: PathBuf,
        #[arg(long)]
        assets_dir: PathBuf,
    },
    /// Run a solution against a bundle's tests.
    Grade {
        #[arg(long)]
        bundle: PathBuf,
        /// Shell command that starts the solution.
        #[arg(long)]
        run: String,
        /// Seconds allowed for the whole suite.
        #[arg(long, default_value_t = 10.0)]
        timeout: f64,
    },
    /// Measure generator throughput.
    Bench {
        /// One kind; every kind when omitted.
        #[arg(long)]
        kind: Option<ExerciseKind>,
        #[arg(long, default_value_t = 5.0)]
        seconds: f64,
        #[arg(long)]
        params: Option<PathBuf>,
    },
    /// Answer the runner protocol with the reference solution.
    Oracle {
        #[arg(long)]
        bundle: PathBuf,
        /// Perturb the answers of this case (for testing the grader).
        #[arg(long)]
        corrupt_case: Option<usize>,
    },
}

impl clap::ValueEnum for ExerciseKind {
    fn value_variants<'a>() -> &'a [Self] {
        &ExerciseKind::ALL
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(self.name()))
    }
}

fn read_params(path: Option<&Path>) -> Result<GenParams, Error> {
    match path {
        None => Ok(GenParams::default()),
        Some(p) => Ok(serde_json::from_str(&fs::read_to_string(p)?)?),
    }
}

fn read_bundle(path: &Path) -> Result<ExerciseBundle, Error> {
    ExerciseBundle::from_json(&fs::read_to_string(path)?)
}

fn seconds(s: f64) -> Result<Duration, Error> {
    Duration::try_from_secs_f64(s).map_err(|_| Error::InvalidInput(format!("{s} is not a valid number of seconds")))
}

fn execute(cmd: Cmd) -> Result<i32, Error> {
    match cmd {
        Cmd::Gen { student, slot, variant, kind, params, out } => {
            let params = read_params(params.as_deref())?;
            let bundle = generate_bundle(&Request { student, slot, variant, kind }, &params)?;
            let text = bundle.to_canonical_json();
            match out {
                Some(path) => fs::write(path, text)?,
                None => io::stdout().write_all(text.as_bytes())?,
            }
            Ok(0)
        }
        Cmd::Render { bundle, assets_dir } => {
            let b = read_bundle(&bundle)?;
            let assets = render_assets(&b.exercise);
            fs::create_dir_all(&assets_dir)?;
            let mut files = vec![("statement.txt", Some(format!("{}\n\n{}\n", b.title, b.statement)))];
            files.push(("tex", assets.latex));
            files.push(("dot", assets.dot));
            files.push(("txt", assets.text));
            for (ext, content) in files {
                if let Some(content) = content {
                    let path = assets_dir.join(format!("{}.{ext}", b.id));
                    fs::write(&path, content)?;
                    println!("{}", path.display());
                }
            }
            Ok(0)
        }
        Cmd::Grade { bundle, run, timeout } => {
            let b = read_bundle(&bundle)?;
            let report = grade(&b, &run, seconds(timeout)?)?;
            println!("{}", serde_json::to_string(&report)?);
            Ok(if report.accepted() { 0 } else { 1 })
        }
        Cmd::Bench { kind, seconds: secs, params } => {
            let params = read_params(params.as_deref())?;
            let budget = seconds(secs)?;
            let kinds = kind.map_or_else(|| ExerciseKind::ALL.to_vec(), |k| vec![k]);
            let mut results = Vec::new();
            for k in kinds {
                results.push(bench(k, &params, budget)?);
            }
            print!("{}", format_table(&results));
            Ok(0)
        }
        Cmd::Oracle { bundle, corrupt_case } => {
            let b = read_bundle(&bundle)?;
            let stdin = io::stdin();
            serve_reference(&b.exercise, corrupt_case, stdin.lock(), io::stdout().lock())?;
            Ok(0)
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
