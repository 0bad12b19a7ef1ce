use std::path::PathBuf;
use std::process::ExitCode;

use apc_core::decomposition::DEFAULT_TOL;
use apc_core::pipeline::{
    read_input, run_classify, run_dims, run_family, run_property_suite, OutputFormat,
};
use apc_core::{Family, Result};
use clap::{Parser, Subcommand};

const EXIT_VALIDATION: u8 = 1;
const EXIT_PROPERTY: u8 = 2;

#[derive(Parser)]
#[command(
    name = "apc",
    version,
    about = "Classify almost paracontact metric structures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a tensor or Lie-algebra input document.
    Classify {
        #[arg(long)]
        input: PathBuf,
        /// Overrides the document's tolerance.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value = "text")]
        format: OutputFormat,
    },
    /// Ranks of the twelve projection operators.
    Dims {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "text")]
        format: OutputFormat,
    },
    /// Classify a canonical Lie-algebra family (g5, g6, g10, g12).
    Family {
        name: Family,
        /// alpha for g5/g10; alpha,beta for g6/g12.
        #[arg(
            long,
            value_delimiter = ',',
            allow_negative_numbers = true,
            required = true
        )]
        params: Vec<f64>,
        #[arg(long)]
        curvature: bool,
        /// Coordinates a,b,c of X = aE1 + bE2 + cE3.
        #[arg(
            long,
            value_delimiter = ',',
            allow_negative_numbers = true,
            num_args = 1
        )]
        expmap: Option<Vec<f64>>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value = "text")]
        format: OutputFormat,
    },
    /// Run the seeded property suite.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        iters: u64,
        #[arg(long, default_value = "text")]
        format: OutputFormat,
    },
}

enum Outcome {
    Done(String),
    PropertyFailure(String),
}

fn validate_tol(tol: f64) -> Result<f64> {
    if tol.is_finite() && tol > 0.0 {
        Ok(tol)
    } else {
        Err(apc_core::Error::Validation(format!(
            "tolerance must be positive, got {tol}"
        )))
    }
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Classify { input, tol, format } => {
            let mut doc = read_input(&input)?;
            if let Some(t) = tol {
                doc.tol = validate_tol(t)?;
            }
            Ok(Outcome::Done(run_classify(&doc)?.render(format)))
        }
        Command::Dims { n, format } => Ok(Outcome::Done(run_dims(n)?.render(format))),
        Command::Family {
            name,
            params,
            curvature,
            expmap,
            tol,
            format,
        } => {
            let expmap = match expmap.as_deref() {
                None => None,
                Some(&[a, b, c]) => Some([a, b, c]),
                Some(other) => {
                    return Err(apc_core::Error::Validation(format!(
                        "--expmap takes a,b,c; got {} value(s)",
                        other.len()
                    )))
                }
            };
            let report = run_family(name, &params, curvature, expmap, validate_tol(tol)?)?;
            Ok(Outcome::Done(report.render(format)))
        }
        Command::Selftest {
            seed,
            iters,
            format,
        } => {
            let report = run_property_suite(seed, iters);
            let text = report.render(format);
            Ok(if report.passed() {
                Outcome::Done(text)
            } else {
                Outcome::PropertyFailure(text)
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(Outcome::Done(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::PropertyFailure(text)) => {
            print!("{text}");
            ExitCode::from(EXIT_PROPERTY)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_VALIDATION)
        }
    }
}
