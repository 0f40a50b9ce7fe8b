use std::process::ExitCode;

use clap::{Parser, Subcommand};
use symseq_cli::{cmd_aut, cmd_iso, OutputOptions};

/// Automorphism groups and isomorphism tests for directed graphs.
///
/// Inputs are DIMACS edge files (`e u v` edges, `a u v` arcs) or family
/// strings such as `family:paley_tournament:7`.
#[derive(Parser)]
#[command(name = "symseq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print group order, generators and orbits.
    Aut {
        input: String,
        #[arg(long)]
        json: bool,
        /// Enumerate all permutations instead (at most 10 vertices).
        #[arg(long)]
        oracle: bool,
    },
    /// Test two graphs for isomorphism. Exits 0 if isomorphic, 1 if not.
    Iso {
        first: String,
        second: String,
        /// Print the vertex mapping as `u -> v` lines.
        #[arg(long)]
        mapping: bool,
        #[arg(long)]
        json: bool,
        /// Enumerate all permutations instead (at most 10 vertices).
        #[arg(long)]
        oracle: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Aut { input, json, oracle } => {
            cmd_aut(&input, OutputOptions { json, oracle, mapping: false }).map(|out| (out, true))
        }
        Command::Iso {
            first,
            second,
            mapping,
            json,
            oracle,
        } => cmd_iso(&first, &second, OutputOptions { json, oracle, mapping }),
    };
    match result {
        Ok((out, success)) => {
            print!("{out}");
            ExitCode::from(if success { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
