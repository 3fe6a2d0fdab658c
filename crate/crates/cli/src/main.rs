//! `semistable`: checks and reports for configuration files.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 when the
//! input cannot be read, parsed or built.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "semistable", version, about = "Combinatorial checks for semistable degenerations")]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Characteristic of the coefficient field (0 or a prime above 3);
    /// overrides the file.
    #[arg(long, global = true)]
    pub field_char: Option<u64>,
    /// Assume the weight-monodromy conjecture.
    #[arg(long, global = true)]
    pub wmc: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Local case analysis of a surface file, or the basic threefold checks.
    Validate { path: PathBuf },
    /// Degeneration type, dual complex and monodromy index.
    Classify { path: PathBuf },
    /// E1 and E2 pages of the weight spectral sequence.
    Spectral {
        path: PathBuf,
        /// Check the H^2 abutment even when b2 was not declared.
        #[arg(long)]
        check_h2: bool,
    },
    /// Coherent cohomology, logarithmic class and Euler characteristic.
    Coherent { path: PathBuf },
    /// Checks the cover section of a file.
    Cover { path: PathBuf },
    /// Degeneration type forced by a torus rank.
    Neron {
        #[arg(long)]
        rank: usize,
    },
    /// Type IV test for a threefold file.
    Cy3 { path: PathBuf },
    /// Writes a generated fixture.
    Examples {
        /// Fixture name; omit to list them.
        name: Option<String>,
        /// Length for chains and cycles.
        n: Option<usize>,
        /// Output file (stdout when absent).
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (code, out) = commands::run(&cli);
    match out {
        Ok(text) => print!("{text}"),
        Err(msg) => eprintln!("error: {msg}"),
    }
    ExitCode::from(code)
}
