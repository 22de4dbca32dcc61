mod commands;
mod report;

use clap::{Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Numeric,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TransformKind {
    /// Folded quadratic transformation of a seed-form record.
    Folded,
    /// Two-square-root transformation (theta_1 = 0, theta_4 = 1).
    Rgt,
    /// A fractional-linear symmetry.
    Mobius,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Plus,
    Minus,
}

#[derive(Parser, Debug)]
#[command(
    name = "pvi",
    version,
    about = "Verify and transform algebraic Painleve VI solutions"
)]
pub struct Cli {
    /// Catalog directory.
    #[arg(long, global = true, default_value_os_t = pvi_algebra::catalog::default_dir())]
    pub catalog: PathBuf,
    #[arg(long, global = true, value_enum, default_value_t = Mode::Both)]
    pub mode: Mode,
    #[arg(long, global = true, default_value_t = 200, value_parser = parse_precision)]
    pub precision_bits: u32,
    #[arg(long, global = true, default_value_t = 1e-30, value_parser = parse_tolerance)]
    pub tolerance: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Residual, genus, degree and (numeric modes) Belyi certification.
    Verify {
        /// Record ids; all records when empty.
        ids: Vec<String>,
        /// Verify a record file outside the catalog.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Apply one transformation to a record.
    Transform {
        id: String,
        #[arg(long, value_enum, default_value_t = TransformKind::Folded)]
        kind: TransformKind,
        /// Symmetry label such as "(1-y,1-t)" for --kind mobius.
        #[arg(long)]
        symmetry: Option<String>,
        #[arg(long, value_enum, default_value_t = BranchArg::Plus)]
        branch: BranchArg,
        /// Record to identify the output with.
        #[arg(long = "match")]
        target: Option<String>,
    },
    /// Run folded transformations along a chain of records.
    Pipeline {
        /// Chain of record ids; a single seed id runs its known chain.
        ids: Vec<String>,
    },
    /// Model checks, singularities and symmetry identities.
    Analyze {
        /// Record ids; all records when empty.
        ids: Vec<String>,
    },
    /// List the catalog.
    CatalogList,
}

fn parse_precision(s: &str) -> Result<u32, String> {
    let p: u32 = s.parse().map_err(|e| format!("{e}"))?;
    if p < 64 {
        return Err("precision must be at least 64 bits".into());
    }
    Ok(p)
}

fn parse_tolerance(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if !(t > 0.0 && t < 1e-6) {
        return Err("tolerance must lie in (0, 1e-6)".into());
    }
    Ok(t)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = commands::run(&cli);
    match outcome.format(cli.format) {
        Ok(text) => {
            // a closed pipe (e.g. `| head`) is not an error of the command
            let _ = writeln!(std::io::stdout().lock(), "{text}");
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    ExitCode::from(outcome.code)
}
