use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod bench;
mod input;
mod output;
mod pl;
mod reduce;
mod verify;

/// Palindromic length of words and reduction of long u-powers.
#[derive(Debug, Parser)]
#[command(name = "palred", version)]
struct Cli {
    /// Worker threads for parallel checks.
    #[arg(long, env = "PALRED_WORKERS", global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Palindromic length, prefix profile or maxPL of a word.
    Pl(pl::PlArgs),
    /// Reduce the u-runs of a generated word and check the result.
    Reduce(reduce::ReduceArgs),
    /// Run the property suite registered under an id.
    Verify(verify::VerifyArgs),
    /// Time the online engine against the oracle.
    Bench(bench::BenchArgs),
}

/// Exit status of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("palred: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Pl(args) => pl::run(args),
        Command::Reduce(args) => reduce::run(args),
        Command::Verify(args) => verify::run(args),
        Command::Bench(args) => bench::run(args),
    };
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("palred: {e:#}");
            ExitCode::from(2)
        }
    }
}
