//! Command-line front end: solve trees/forests, verify candidate sets,
//! brute-force small instances, inspect the fail-relocation mapping,
//! generate graphs, and run the self-check property suite.

mod cmd;
mod props;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exit codes: 0 ok/valid, 1 invalid candidate or failed check,
/// 2 parse/input error, 3 structural error (not a tree/forest),
/// 4 enumeration refusal.
#[derive(Parser)]
#[command(
    name = "failset",
    version,
    about = "Minimum failure sets for distance-limited component-order connectivity on trees and forests"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a minimum failure set for a tree or forest
    Solve(SolveArgs),
    /// Check whether a candidate vertex set fails a graph
    Verify(VerifyArgs),
    /// Exhaustively search a small graph for the true minimum
    Oracle(OracleArgs),
    /// Build the fail-relocation mapping for a candidate set
    Map(MapArgs),
    /// Emit a generated tree, forest, or named family as an edge list
    Gen(GenArgs),
    /// Run the property suite over generated instances
    Props(props::PropsArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args)]
pub struct SolveArgs {
    /// Edge-list file, or `-` for standard input
    input: String,
    /// Component-order threshold (1 <= k <= n)
    #[arg(long)]
    k: usize,
    /// Coverage distance (>= 0)
    #[arg(long)]
    ell: usize,
    /// Root label; defaults to the first vertex in the input
    #[arg(long)]
    root: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also write an annotated DOT rendering of the result
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Edge-list file, or `-` for standard input
    input: String,
    /// Candidate set file: one label per line, `#` comments allowed
    candidates: String,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    ell: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
pub struct OracleArgs {
    /// Edge-list file, or `-` for standard input
    input: String,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    ell: usize,
    /// Enumerate even above the soft vertex cap
    #[arg(long)]
    force: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
pub struct MapArgs {
    /// Edge-list file, or `-` for standard input
    input: String,
    /// Candidate set file: one label per line, `#` comments allowed
    candidates: String,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    ell: usize,
    /// Root label; defaults to the first vertex in the input
    #[arg(long)]
    root: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
pub struct GenArgs {
    /// random-tree, random-forest, path, star, caterpillar, or
    /// complete-enumeration
    #[arg(long)]
    family: String,
    /// Vertex count
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Solve(args) => cmd::solve(&args),
        Command::Verify(args) => cmd::verify(&args),
        Command::Oracle(args) => cmd::oracle(&args),
        Command::Map(args) => cmd::map(&args),
        Command::Gen(args) => cmd::gen(&args),
        Command::Props(args) => props::run(&args),
    };
    ExitCode::from(code)
}

/// Maps library errors onto the documented exit codes.
pub fn exit_code(err: &failset::Error) -> u8 {
    use failset::Error::*;
    match err {
        Parse { .. }
        | UnknownLabel(_)
        | UnknownVertex(_)
        | InvalidThreshold { .. }
        | InvalidEdge(_)
        | InvalidInput(_)
        | NotAFailureSet(_) => 2,
        NotATree | NotAForest | ForestInput | Disconnected => 3,
        OracleCapExceeded { .. } | OracleHardLimit { .. } => 4,
    }
}

pub fn fail(err: &failset::Error) -> u8 {
    eprintln!("error: {err}");
    exit_code(err)
}

/// Reads a file argument, with `-` meaning standard input.
pub fn read_input(path: &str) -> Result<String, u8> {
    let result = if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map(|_| buf)
    } else {
        std::fs::read_to_string(path)
    };
    result.map_err(|e| {
        eprintln!("error: cannot read `{path}`: {e}");
        2
    })
}

/// Parses a candidate-set file: one label per line, `#` comments, blanks
/// ignored.
pub fn parse_candidate_labels(text: &str) -> Result<Vec<String>, failset::Error> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if line.split_whitespace().count() != 1 {
            return Err(failset::Error::Parse {
                line: i + 1,
                msg: format!("expected a single label, got `{line}`"),
            });
        }
        out.push(line.to_string());
    }
    Ok(out)
}
