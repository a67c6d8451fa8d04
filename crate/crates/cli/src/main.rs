//! `polysmooth` command-line front end.
//!
//! Exit status: 0 on success, 1 on a mathematical failure (the error is
//! written to stderr as JSON), 2 on a usage error.

mod commands;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polysmooth::budget::Preset;

#[derive(Parser, Debug)]
#[command(name = "polysmooth", version, about = "Certified polynomial compositions with small factors")]
pub struct Cli {
    /// Emit versioned JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for the evaluation points of probabilistic verification.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    pub seed: u64,
    /// Budget preset: ci, desk or long.
    #[arg(long, global = true, default_value = "desk", value_parser = parse_preset)]
    pub budget: Preset,
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Report wall-clock time.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

fn parse_preset(s: &str) -> Result<Preset, String> {
    s.parse().map_err(|e: polysmooth::Error| e.to_string())
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exponent reached by iterating Schinzel's substitution on degree d.
    Theta {
        d: u64,
        /// Truncation tolerance as a rational, e.g. 1/1000000000000.
        #[arg(long)]
        tol: Option<String>,
    },
    /// Build and verify a certificate.
    Construct(ConstructArgs),
    /// Re-verify a certificate document.
    Verify {
        /// Certificate JSON file, or - for stdin.
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
        mode: ModeArg,
    },
    /// Bounded obstruction searches.
    Scan {
        #[arg(value_enum)]
        kind: ScanKind,
        /// Irreducible polynomial f.
        #[arg(short = 'f', long = "poly", allow_hyphen_values = true)]
        f: String,
        /// Height bound (default from the budget preset).
        #[arg(long)]
        height: Option<u64>,
        /// Skip shells below this height.
        #[arg(long, default_value_t = 1)]
        resume_from_shell: u64,
    },
    /// Find m with f(g(m)) smooth relative to g(m)^eps.
    Smooth {
        /// Quadratic f; a certificate is built automatically.
        #[arg(short = 'f', long = "poly", allow_hyphen_values = true, required_unless_present = "certificate")]
        f: Option<String>,
        /// Use an existing certificate instead of building one.
        #[arg(long, conflicts_with = "f")]
        certificate: Option<PathBuf>,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[arg(long)]
        csv: bool,
    },
    /// Tabulate f(g(m)) and its factor values over a range of m.
    Sample {
        /// Certificate JSON file, or - for stdin.
        certificate: PathBuf,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, default_value_t = 20, allow_hyphen_values = true)]
        to: i64,
        #[arg(long)]
        csv: bool,
    },
    /// Factor a polynomial over the integers.
    FactorPoly {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Factor an integer.
    FactorInt {
        #[arg(allow_hyphen_values = true)]
        n: String,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Auto,
    Symbolic,
    Probabilistic,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScanKind {
    QuadraticSubst,
    RationalPoints,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Trivial,
    Schinzel,
    Binomial,
    Quadratic,
    Decomposition,
    Trinomial,
    CubicFamily,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    I,
    Ii,
}

#[derive(Args, Debug)]
#[command(disable_help_flag = true)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub method: MethodArg,
    /// Target polynomial f.
    #[arg(short = 'f', long = "poly", allow_hyphen_values = true)]
    pub f: Option<String>,
    /// Decomposition: inner polynomial g.
    #[arg(short = 'g', long = "inner", allow_hyphen_values = true)]
    pub g: Option<String>,
    /// Decomposition: polynomial h with f(t) = g(h(t)) - t.
    #[arg(short = 'h', long = "outer", allow_hyphen_values = true)]
    pub h: Option<String>,
    /// Schinzel: number of iterations.
    #[arg(long, default_value_t = 1)]
    pub steps: usize,
    /// Binomial a*t^k - b given as a,b,k; repeat for a product.
    #[arg(long = "binomial", allow_hyphen_values = true)]
    pub binomials: Vec<String>,
    /// Binomial: prime cutoff y.
    #[arg(short = 'y', long)]
    pub y: Option<u64>,
    /// Quadratic: prime cutoff X.
    #[arg(short = 'x', long, default_value_t = 5)]
    pub x: u64,
    /// Trinomial variant.
    #[arg(long, value_enum, default_value_t = VariantArg::Ii)]
    pub variant: VariantArg,
    #[arg(short = 'a', long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(short = 'b', long, allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(short = 'k', long)]
    pub k: Option<usize>,
    /// Cubic family: number of entries.
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    /// Also write the certificate JSON to this file.
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
    #[arg(long, action = clap::ArgAction::Help, help = "Print help")]
    pub help: Option<bool>,
}

/// Result of a command: what to print, and whether it counts as success.
pub struct Outcome {
    pub stdout: String,
    /// Set when the command ran but the mathematical check failed.
    pub failure: Option<serde_json::Value>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot configure {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.stdout.as_bytes());
            match out.failure {
                None => ExitCode::SUCCESS,
                Some(err) => {
                    eprintln!("{}", render::error_document(err));
                    ExitCode::from(1)
                }
            }
        }
        Err(commands::Failure::Math(e)) => {
            eprintln!("{}", render::error_document(e.to_json()));
            ExitCode::from(1)
        }
        Err(commands::Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
