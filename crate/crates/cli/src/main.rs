//! `iforms`: coefficient tables, morphism evaluation, Magnus and BCH series,
//! and verification suites for the homotopy-transfer algebra of the interval.

mod commands;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "iforms",
    version,
    about = "Exact computations with A-infinity and C-infinity structures on interval forms"
)]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

/// Sizes shared by every command.
#[derive(Args, Debug, Clone)]
pub struct Config {
    /// Truncation order N (highest arity of Taylor coefficients)
    #[arg(short = 'N', long = "order", env = "IFORMS_ORDER", default_value_t = 6, global = true,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub order: u64,
    /// Polynomial degree cap D for form-side inputs
    #[arg(short = 'D', long = "poly-degree", env = "IFORMS_POLY_DEGREE", default_value_t = 12, global = true,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub poly_degree: u64,
    /// Nilpotency degree of the coefficient algebras
    #[arg(long = "lie-degree", env = "IFORMS_LIE_DEGREE", default_value_t = 4, global = true,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub lie_degree: u64,
    /// Output format
    #[arg(long, env = "IFORMS_OUTPUT", value_enum, default_value_t = Output::Json, global = true)]
    pub output: Output,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Output {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a coefficient table
    Table {
        #[arg(value_enum)]
        kind: TableKind,
        /// Largest index shown (defaults to N)
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Run a named verification suite, or `all`
    Verify(commands::VerifyArgs),
    /// Evaluate or verify a cataloged morphism
    Morphism {
        #[command(subcommand)]
        action: MorphismAction,
    },
    /// Magnus expansion of a coefficient path, in the Lyndon basis
    Magnus(commands::MagnusArgs),
    /// Baker-Campbell-Hausdorff series log(e^{ax} e^{by})
    Bch(commands::BchArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    Eulerian,
    Bernoulli,
    M,
    Mu,
    Gamma,
    Exp,
    Log,
}

#[derive(Subcommand, Debug)]
enum MorphismAction {
    /// Evaluate a Taylor coefficient on the given inputs
    Eval(commands::EvalArgs),
    /// Check the morphism relation of an arrow on basis tensors
    Verify(commands::MorphismVerifyArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Table { kind, n_max } => commands::table(&cli.config, kind, n_max),
        Command::Verify(args) => commands::verify(&cli.config, &args),
        Command::Morphism { action } => match action {
            MorphismAction::Eval(args) => commands::eval(&cli.config, &args),
            MorphismAction::Verify(args) => commands::morphism_verify(&cli.config, &args),
        },
        Command::Magnus(args) => commands::magnus(&cli.config, &args),
        Command::Bch(args) => commands::bch(&cli.config, &args),
    };
    match result {
        Ok(commands::Outcome::Pass) => ExitCode::SUCCESS,
        Ok(commands::Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
