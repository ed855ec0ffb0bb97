//! Command-line front end: chain files, bundled datasets and the
//! classification commands.

mod commands;
pub mod format;
mod render;

use std::ffi::OsString;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

pub use commands::resolve;

/// Exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// Empty classification or a false criterion.
    pub const NEGATIVE: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const RESOURCE: i32 = 3;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Aligned text.
    Table,
    /// A chain file carrying the input data and a `results` table.
    Machine,
}

#[derive(Debug, Parser)]
#[command(
    name = "chainsheaf",
    version,
    about = "Classify equivariant sheaves on fastened orbit chains"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Table, global = true)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

/// References have the form `DATASET:NAME`, where `DATASET` is a bundled
/// dataset (su11, sp4, gl2) or a path to a chain file.
#[derive(Debug, Subcommand)]
enum Command {
    /// Whether a normal character (or every closed orbit of a chain) is fastened.
    #[command(group(ArgGroup::new("subject").required(true).args(["normal", "chain"])))]
    CheckFastened {
        #[arg(long)]
        normal: Option<String>,
        #[arg(long)]
        chain: Option<String>,
    },
    /// Equivariant line bundles on a chain or graph.
    #[command(group(ArgGroup::new("subject").required(true).args(["chain", "graph"])))]
    ClassifyLineBundles {
        #[arg(long)]
        chain: Option<String>,
        #[arg(long)]
        graph: Option<String>,
        /// Open-orbit character, comma separated; prints its allowed degrees.
        #[arg(long, allow_hyphen_values = true)]
        character: Option<String>,
    },
    /// Filtered objects coming from local systems on a simple chain.
    ClassifyLocalSystems {
        #[arg(long)]
        chain: String,
    },
    /// Filtered objects admitted by a tame quotient datum.
    ClassifyTame {
        #[arg(long)]
        quotient: String,
    },
    /// Check a filtered object or an assembly of orbit data.
    #[command(group(ArgGroup::new("subject").required(true).args(["object", "assembly"])))]
    ValidateObject {
        #[arg(long)]
        object: Option<String>,
        #[arg(long)]
        assembly: Option<String>,
        /// Reject lines at infinite degree.
        #[arg(long)]
        finite_type: bool,
    },
    /// Universal tame quotient of a ring presentation.
    TameQuotient {
        #[arg(long)]
        ring: String,
    },
    /// Minimal generators of the monoid cut out by a weight vector.
    #[command(group(ArgGroup::new("subject").required(true).args(["weights", "ring"])))]
    HilbertBasis {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Option<Vec<i64>>,
        #[arg(long)]
        ring: Option<String>,
        /// Describe `Σ e_i d_i ≥ 0` instead of `= 0`.
        #[arg(long)]
        nonnegative: bool,
    },
    /// Compare half-trace and representation pairings, entries like `1/2`.
    CheckAdmissible {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        tr: Vec<String>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        rho: Vec<String>,
    },
}

/// What a run prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one command line; `args` starts with the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: exit::INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: exit::OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    commands::dispatch(cli.command, cli.format)
}
