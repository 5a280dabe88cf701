//! `ptri`: batch front end. Reads one JSON input, writes a JSON report.
//! Exit status 0 on success, 1 on an invalid input with a report, 2 on
//! malformed input.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ptri_core::io::{parse_context, parse_json, IoError};

use commands::{Flags, Outcome};

#[derive(Parser)]
#[command(name = "ptri", version, about = "p-adic triangulation toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Input JSON file.
    #[arg(global = true)]
    input: Option<PathBuf>,
    /// Report path; stdout when absent.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Also write a DOT digraph of the relevant specialization tree.
    #[arg(long, global = true)]
    dot: Option<PathBuf>,
    /// Number of sampled points (oracle).
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Valuation depth or window bound (oracle).
    #[arg(long, global = true)]
    depth: Option<i64>,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Check that a polytope presentation is valid.
    ValidatePolytope,
    /// List the nonempty faces of a polytope.
    Faces,
    /// Decide whether a polytope is a discrete simplex.
    SimplexCheck,
    /// Validate a simplicial complex.
    ComplexCheck,
    /// Build a retraction onto a lower subset and apply it to points.
    Retract,
    /// Run the dispatching algorithm on a cellular monoplex.
    Dispatch,
    /// Dispatch and lift a cellular monoplex to p-adic simplexes.
    TriangulateCells,
    /// Find and certify a good direction for a polynomial family.
    GoodDirection,
    /// Enumerate window points of a polytope or sample p-adic points.
    Oracle,
}

fn run(cli: &Cli) -> Result<Outcome, IoError> {
    let path = cli.input.as_ref().ok_or_else(|| IoError::Malformed("no input file given".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| IoError::Malformed(format!("{}: {e}", path.display())))?;
    let root = parse_json(&text)?;
    let ctx = match parse_context(&root) {
        Ok(c) => c,
        Err(IoError::Invalid(e)) => {
            return Ok(Outcome { report: serde_json::json!({"valid": false, "error": e}), valid: false, dot: None })
        }
        Err(e) => return Err(e),
    };
    let flags = Flags { samples: cli.samples, depth: cli.depth };
    match cli.command {
        Command::ValidatePolytope => commands::validate_polytope(&root),
        Command::Faces => commands::faces(&root),
        Command::SimplexCheck => commands::simplex_check(&root),
        Command::ComplexCheck => commands::complex_check(&root),
        Command::Retract => commands::retract(&root, &ctx),
        Command::Dispatch => commands::dispatch_cmd(&root, &ctx),
        Command::TriangulateCells => commands::triangulate_cells(&root, &ctx),
        Command::GoodDirection => commands::good_direction(&root, &ctx),
        Command::Oracle => commands::oracle(&root, &ctx, &flags),
    }
}

fn write(path: Option<&PathBuf>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("ptri: {e}");
            return ExitCode::from(2);
        }
    };
    let text = serde_json::to_string_pretty(&outcome.report).expect("reports serialize") + "\n";
    if let Err(e) = write(cli.output.as_ref(), &text) {
        eprintln!("ptri: cannot write report: {e}");
        return ExitCode::from(2);
    }
    if let (Some(path), Some(dot)) = (cli.dot.as_ref(), outcome.dot.as_ref()) {
        if let Err(e) = std::fs::write(path, dot) {
            eprintln!("ptri: cannot write DOT file: {e}");
            return ExitCode::from(2);
        }
    }
    ExitCode::from(if outcome.valid { 0 } else { 1 })
}
