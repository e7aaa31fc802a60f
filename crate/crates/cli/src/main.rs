mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use geozeta::complex::Generator;

/// Exact zeta polynomials, closed geodesics and linking numbers on regular
/// polyhedral complexes.
#[derive(Parser)]
#[command(name = "geozeta", version)]
struct Cli {
    /// Print `key: value` lines only.
    #[arg(long, global = true)]
    machine: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// Complex file.
    #[arg(long, value_name = "FILE")]
    pub complex: Option<PathBuf>,
    /// Built-in generator, e.g. `grid_torus(3,3)`.
    #[arg(long, value_name = "GENERATOR")]
    pub gen: Option<Generator>,
}

#[derive(Args, Clone)]
pub struct CoverInput {
    /// Cover complex file (needs `--action`).
    #[arg(
        long,
        value_name = "FILE",
        requires = "action",
        conflicts_with = "base"
    )]
    pub complex: Option<PathBuf>,
    /// Permutation file with the deck generator on every degree.
    #[arg(long, value_name = "FILE")]
    pub action: Option<PathBuf>,
    /// Base torus to unwrap, `grid_torus(a,b)` or `tri_torus(a,b)`.
    #[arg(long, value_name = "GENERATOR", required_unless_present = "complex")]
    pub base: Option<Generator>,
    /// Number of sheets.
    #[arg(long, short = 'm', default_value_t = 3)]
    pub order: usize,
}

#[derive(Subcommand)]
pub enum Command {
    /// Check the structural invariants of a complex.
    Validate(Input),
    /// Cell counts, regularity, Euler characteristic and fingerprint.
    Info {
        #[command(flatten)]
        input: Input,
        /// Also print `boundary:<k>`, `laplacian:<k>` or `transfer` as
        /// `row col value` triplets.
        #[arg(long, value_name = "MATRIX")]
        emit_matrix: Option<String>,
    },
    /// Write a built-in complex in the text format.
    Generate {
        generator: Generator,
        #[arg(long, short, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Build and print the dual complex.
    Dual(Input),
    /// Rational Betti numbers.
    Betti(Input),
    /// Coefficients of det(1 − zT) and its root multiplicity at 1/(N+2).
    Zeta {
        #[command(flatten)]
        input: Input,
        /// Extra point `p/q` at which to report the vanishing order.
        #[arg(long, value_name = "P/Q")]
        at: Option<String>,
    },
    /// Enumerate closed geodesics by length.
    Geodesics {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        /// List every class, not only the per-length table.
        #[arg(long)]
        list: bool,
    },
    /// Compare signed geodesic counts with tr(T^k).
    TraceCheck {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 8)]
        max_k: usize,
    },
    /// Linking number of a base knot and a dual knot via the geodesic series.
    Linking {
        #[command(flatten)]
        input: Input,
        /// Base 1-chain file.
        #[arg(long, value_name = "FILE")]
        knot1: PathBuf,
        /// Dual 1-chain file.
        #[arg(long, value_name = "FILE")]
        knot2: PathBuf,
        /// Point `p/q` for the partial-sum comparison; defaults to 1/(2B).
        #[arg(long, value_name = "P/Q")]
        z: Option<String>,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Build a cyclic cover of a torus and write it with its deck action.
    CoverBuild {
        #[arg(long, value_name = "GENERATOR")]
        base: Generator,
        #[arg(long, short = 'm', default_value_t = 3)]
        order: usize,
        #[arg(long, value_name = "FILE")]
        output_complex: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        output_action: Option<PathBuf>,
    },
    /// L²-Betti numbers of a finite cover.
    L2Betti(CoverInput),
    /// Compare ζ_FK and det_FK(s + Δ̂) as s → 0 on a finite cover.
    L2ZetaCheck {
        #[command(flatten)]
        cover: CoverInput,
        /// Decreasing sample points `p/q` for the slope fit.
        #[arg(long, value_delimiter = ',', default_value = "1/100,1/1000,1/10000")]
        s: Vec<String>,
        /// Point at which s^{-b} det_FK(s + Δ̂) is compared with det_FK(Δ̂).
        #[arg(long, value_name = "P/Q", default_value = "1/1000000")]
        s_limit: String,
    },
    /// Ψ-series coefficients and the heat trace on a finite cover.
    Psi {
        #[command(flatten)]
        cover: CoverInput,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Heat-trace time `p/q`.
        #[arg(long, value_name = "P/Q", default_value = "1000")]
        t: String,
    },
    /// Signed counts of base geodesics that close up in the cover.
    HolonomyCheck {
        #[command(flatten)]
        cover: CoverInput,
        #[arg(long, default_value_t = 8)]
        max_k: usize,
    },
}

pub enum Status {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(cli.command, &output::Report::new(cli.machine)) {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Fail) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
