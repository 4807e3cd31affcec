use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod build;
mod output;
mod series;

use output::Failure;

#[derive(Parser)]
#[command(name = "magic", version, about = "Freudenthal magic square: constructions, root data and dimension formulas")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Composition algebra tables.
    Algebra {
        #[command(subcommand)]
        action: build::AlgebraCmd,
    },
    /// Triality algebra bases.
    Triality {
        #[command(subcommand)]
        action: build::TrialityCmd,
    },
    /// Build g(A,B) and optionally check the Jacobi identity.
    Magic {
        #[command(subcommand)]
        action: build::MagicCmd,
    },
    /// Construction and invariant checks for one square entry.
    Verify(build::VerifyArgs),
    /// Extract the root datum of g(A,B).
    Roots(build::RootsArgs),
    /// Exact dimension from a series formula or a root datum.
    Dim(series::DimArgs),
    /// Compare every closed form with the Weyl dimension formula.
    Crosscheck(series::CrosscheckArgs),
    /// Tabulate a formula over a parameter range.
    Table(series::TableArgs),
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("MAGIC_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| Failure::Usage(format!("MAGIC_THREADS must be a positive integer, got {v:?}")))?;
    if n == 0 {
        return Err(Failure::Usage("MAGIC_THREADS must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Check(e.to_string()))
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_threads()?;
    match cli.command {
        Command::Algebra { action } => build::algebra(action),
        Command::Triality { action } => build::triality(action),
        Command::Magic { action } => build::magic(action),
        Command::Verify(args) => build::verify(args),
        Command::Roots(args) => build::roots(args),
        Command::Dim(args) => series::dim(args),
        Command::Crosscheck(args) => series::crosscheck(args),
        Command::Table(args) => series::table(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.message());
            ExitCode::from(f.code())
        }
    }
}
