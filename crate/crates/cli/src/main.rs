//! `hyperhec`: hypergraph centralities from the command line.
//!
//! Exit status is 0 on success, 1 on any input or usage error and 2 when a
//! solver fails to converge (unless `--allow-unconverged` is given).

mod commands;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "hyperhec",
    version,
    about = "Spectral centralities for cyclic, directed and k-step hypergraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Node and edge counts, uniformity and edge kinds.
    Info {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Extract the largest strongly connected tail-uniform sub-hypergraph.
    Core {
        #[command(flatten)]
        input: InputArgs,
        /// Tail cardinality to keep; defaults to the most common one.
        #[arg(long)]
        tails: Option<usize>,
        /// Output file in hyperedge format (stdout if absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute a centrality and write the ranking.
    Centrality {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum)]
        method: Method,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        solver: SolverArgs,
        /// CSV output `node,score,rank` (stdout if absent).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the full result as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Spearman correlation and top-K curves between two rankings.
    Compare(CompareArgs),
    /// Write a seeded synthetic reaction network.
    Synth {
        #[arg(long, default_value_t = 200)]
        species: usize,
        /// Reactions beyond the connecting backbone.
        #[arg(long, default_value_t = 400)]
        reactions: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct CompareArgs {
    /// Input for `--method-a/--method-b`.
    #[arg(long, requires_all = ["method_a", "method_b"])]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Hyperedges)]
    format: Format,
    #[arg(long)]
    undirected: bool,
    #[arg(long, value_enum, requires = "input")]
    method_a: Option<Method>,
    #[arg(long, value_enum, requires = "input")]
    method_b: Option<Method>,
    /// Ranking CSV (as written by `centrality`), instead of a method.
    #[arg(long, conflicts_with_all = ["input", "method_a", "method_b"], requires = "scores_b")]
    scores_a: Option<PathBuf>,
    #[arg(long, requires = "scores_a")]
    scores_b: Option<PathBuf>,
    /// Comma-separated K values; default is a log-spaced grid ending at N.
    #[arg(long, value_delimiter = ',')]
    ks: Option<Vec<usize>>,
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    solver: SolverArgs,
    /// CSV output `K,rho_ab,rho_ba` (stdout if absent).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct InputArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Hyperedges)]
    format: Format,
    /// Edge lists only: mirror every arc.
    #[arg(long)]
    undirected: bool,
}

#[derive(Args, Debug, Clone, Copy)]
struct ModelArgs {
    /// Walk order for `kstep`.
    #[arg(long)]
    k: Option<usize>,
    /// Restrict a directed input to its strongly connected core with this
    /// many tail nodes before solving.
    #[arg(long)]
    tails: Option<usize>,
}

#[derive(Args, Debug, Clone, Copy)]
struct SolverArgs {
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, default_value_t = 10_000)]
    max_iter: usize,
    #[arg(long, default_value_t = 1.0)]
    shift: f64,
    /// Write results even if the solver did not converge.
    #[arg(long)]
    allow_unconverged: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    /// `A,B,C`, `cyc A,B,C` and `A,B -> C` lines, optional `: weight`.
    Hyperedges,
    /// `A + B -> C + D` lines; stoichiometric coefficients are ignored.
    Reactions,
    /// `src dst [weight]` lines.
    Edgelist,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Method {
    /// H-eigenvector centrality of the adjacency tensor.
    Hec,
    /// Directed H-eigenvector centrality on a tail-uniform hypergraph.
    HecDirected,
    /// Eigenvector centrality of a single-tail (F) hypergraph.
    EcF,
    /// Eigenvector centrality of the projected graph.
    EcProjection,
    /// k-step centrality on the (projected) graph; needs `--k`.
    Kstep,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Hec => "hec",
            Method::HecDirected => "hec-directed",
            Method::EcF => "ec-f",
            Method::EcProjection => "ec-projection",
            Method::Kstep => "kstep",
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Info { input } => commands::info(&input),
        Command::Core { input, tails, out } => commands::core(&input, tails, out.as_deref()),
        Command::Centrality {
            input,
            method,
            model,
            solver,
            out,
            json,
        } => commands::centrality(&input, method, model, solver, out.as_deref(), json.as_deref()),
        Command::Compare(args) => commands::compare(&args),
        Command::Synth {
            species,
            reactions,
            seed,
            out,
        } => commands::synth(species, reactions, seed, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
