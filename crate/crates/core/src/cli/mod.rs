//! Command-line front end. Each subcommand produces a [`RunReport`]; the
//! exit code is 0 when every check passes, 1 for usage and I/O errors and 2
//! when a verification fails.

mod commands;
mod report;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

pub use report::{Check, Expectation, RunReport, Timings};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFICATION: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    pub fn usage(e: impl std::fmt::Display) -> CliError {
        CliError::Usage(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "revsym", version, about = "Symmetry verification for u_t = L²u on surfaces of revolution")]
pub struct Cli {
    /// Seed for the randomized zero tests.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the JSON run report to this path.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    /// Print the JSON run report instead of the text summary.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the surface families, their curvature and generators.
    Catalog,
    /// Check cataloged generators against the invariance condition.
    VerifySymmetry(VerifySymmetryArgs),
    /// Check an exact solution symbolically and on refined grids.
    VerifySolution(VerifySolutionArgs),
    /// Derive a similarity reduction and diff it against the published form.
    Reduce(ReduceArgs),
    /// Write a triangle mesh of a surface as OBJ.
    Mesh(MeshArgs),
    /// Print every conflict between derived and published formulas.
    Discrepancies,
}

#[derive(Debug, Args)]
pub struct VerifySymmetryArgs {
    #[arg(long)]
    pub family: String,
    /// Comma-separated `name=value` pairs; Greek or ASCII names.
    #[arg(long, default_value = "")]
    pub params: String,
    /// A generator such as `X6` or `cylinder.X6`.
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    pub generator: Option<String>,
    #[arg(long)]
    pub all: bool,
}

#[derive(Debug, Args)]
pub struct VerifySolutionArgs {
    /// Published example 1, 2 or 3.
    #[arg(long, conflicts_with_all = ["f", "u"], required_unless_present = "u")]
    pub example: Option<String>,
    /// Profile f(x).
    #[arg(long, requires = "u")]
    pub f: Option<String>,
    /// Candidate u(x, y, t).
    #[arg(long, requires = "f")]
    pub u: Option<String>,
    /// Left end of the x range for custom checks.
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub x0: f64,
    #[arg(long, default_value_t = 1.5, allow_negative_numbers = true)]
    pub x1: f64,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    /// `translation`, `scaling` or `two-dim`.
    #[arg(long)]
    pub subalgebra: String,
    #[arg(long, default_value = "a", allow_negative_numbers = true)]
    pub a: String,
    #[arg(long, default_value = "b", allow_negative_numbers = true)]
    pub b: String,
    /// Profile f(x); a generic profile when omitted.
    #[arg(long)]
    pub f: Option<String>,
}

#[derive(Debug, Args)]
pub struct MeshArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long, default_value = "")]
    pub params: String,
    #[arg(long, default_value_t = 64)]
    pub nx: usize,
    #[arg(long, default_value_t = 64)]
    pub ny: usize,
    #[arg(long)]
    pub out: PathBuf,
    /// Override the x range, e.g. `--x0 0.25 --x1 5`.
    #[arg(long, requires = "x1", allow_negative_numbers = true)]
    pub x0: Option<f64>,
    #[arg(long, requires = "x0", allow_negative_numbers = true)]
    pub x1: Option<f64>,
    /// Quadrature tolerance for the profile curve.
    #[arg(long, default_value_t = crate::geometry::DEFAULT_TOLERANCE)]
    pub tol: f64,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Catalog => "catalog",
            Command::VerifySymmetry(_) => "verify-symmetry",
            Command::VerifySolution(_) => "verify-solution",
            Command::Reduce(_) => "reduce",
            Command::Mesh(_) => "mesh",
            Command::Discrepancies => "discrepancies",
        }
    }

    fn inputs(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        let mut put = |k: &str, v: &dyn std::fmt::Display| {
            m.insert(k.to_string(), v.to_string());
        };
        match self {
            Command::Catalog | Command::Discrepancies => {}
            Command::VerifySymmetry(a) => {
                put("family", &a.family);
                put("params", &a.params);
                match &a.generator {
                    Some(g) => put("generator", g),
                    None => put("all", &true),
                }
            }
            Command::VerifySolution(a) => {
                if let Some(e) = &a.example {
                    put("example", e);
                } else {
                    put("f", a.f.as_ref().expect("clap requires f"));
                    put("u", a.u.as_ref().expect("clap requires u"));
                    put("x0", &a.x0);
                    put("x1", &a.x1);
                }
            }
            Command::Reduce(a) => {
                put("subalgebra", &a.subalgebra);
                put("a", &a.a);
                put("b", &a.b);
                if let Some(f) = &a.f {
                    put("f", f);
                }
            }
            Command::Mesh(a) => {
                put("family", &a.family);
                put("params", &a.params);
                put("nx", &a.nx);
                put("ny", &a.ny);
                put("out", &a.out.display());
                if let (Some(x0), Some(x1)) = (a.x0, a.x1) {
                    put("x0", &x0);
                    put("x1", &x1);
                }
            }
        }
        m
    }
}

/// Runs a parsed command and returns its report.
pub fn execute(cli: &Cli) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let mut report = RunReport::new(cli.command.name(), cli.command.inputs(), cli.seed);
    match cli.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(CliError::usage)?;
            pool.install(|| commands::dispatch(&cli.command, cli.seed, &mut report))?
        }
        None => commands::dispatch(&cli.command, cli.seed, &mut report)?,
    }
    report.timings.total_seconds = start.elapsed().as_secs_f64();
    report.exit_code = if report.all_passed() { EXIT_OK } else { EXIT_VERIFICATION };
    if let Some(path) = &cli.report {
        let text = serde_json::to_string_pretty(&report).expect("report serializes");
        std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(report)
}

/// Parses `args`, runs the command, prints the outcome and returns the exit
/// code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                println!("{report}");
            }
            report.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
