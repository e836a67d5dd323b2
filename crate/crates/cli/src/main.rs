//! `snyder`: batch front end for series computation, similarity transforms,
//! exact verification and hermitization of Snyder-type realizations.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use snyder_core::realizations::{Model, Mutation};

#[derive(Parser, Debug)]
#[command(name = "snyder", version, about = "Exact realizations of Snyder and kappa-Poincare type algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the phi and g coefficient tables for a transformation F, F0 or a phi1
    Series(Opts),
    /// Check a catalogue model against its target algebra
    Verify(Opts),
    /// Conjugate a catalogue model by exp(i(F0(u) + (x.p) F(u))) and verify the result
    Transform(Opts),
    /// Replace every element by its Hermitian part and re-verify
    Hermitize(Opts),
    /// Check a model in the polynomial representation with rational parameter values
    Oracle(Opts),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum MetricKind {
    Lorentzian,
    Euclidean,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Clone, Debug)]
pub struct Opts {
    /// Spacetime dimension
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(2..=6))]
    pub dim: u32,

    /// Truncation grade [default: 8 for beta-only models, 6 for kappa models]
    #[arg(long)]
    pub grade: Option<u32>,

    /// Series order K [default: 8, raised to grade/2 when the grade needs it]
    #[arg(long)]
    pub order: Option<usize>,

    #[arg(long, value_enum, default_value_t = MetricKind::Lorentzian)]
    pub metric: MetricKind,

    /// Model id: snyder-original, snyder-phi, extended-snyder, extended-snyder-phi,
    /// kappa-extended, kappa-mixed, kappa-poincare-natural
    #[arg(long, value_parser = parse_model)]
    pub model: Option<Model>,

    /// Transformation series F(u), e.g. "-u/2"
    #[arg(long = "F", allow_hyphen_values = true)]
    pub f: Option<String>,

    /// Phase series F0(u)
    #[arg(long = "F0", allow_hyphen_values = true)]
    pub f0: Option<String>,

    /// phi1(u) for the phi models, e.g. "sqrt(1-u)"
    #[arg(long, allow_hyphen_values = true)]
    pub phi1: Option<String>,

    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Output format [default: json when --out ends in .json, text otherwise]
    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// Also run the representation oracle (verify)
    #[arg(long)]
    pub oracle: bool,

    /// Inject a fault: flip-xhat-term, phi2-plus-u, drop-ma-term
    #[arg(long, value_parser = parse_mutation)]
    pub mutate: Option<Mutation>,

    /// Polynomial degree of the oracle basis
    #[arg(long, default_value_t = 3)]
    pub poly_degree: u32,

    /// Oracle value of b
    #[arg(long, default_value = "1/7", allow_hyphen_values = true)]
    pub beta: String,

    /// Oracle values of a[mu], comma separated; missing components are 0
    #[arg(long, default_value = "1/11", allow_hyphen_values = true)]
    pub a: String,

    /// Report elapsed_ms as 0 so reports are byte-identical across runs
    #[arg(long)]
    pub no_timing: bool,
}

fn parse_model(s: &str) -> Result<Model, String> {
    s.parse().map_err(|e: snyder_core::realizations::RealizationError| e.to_string())
}

fn parse_mutation(s: &str) -> Result<Mutation, String> {
    s.parse().map_err(|e: snyder_core::realizations::RealizationError| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (opts, result) = match &cli.command {
        Command::Series(o) => (o, commands::series(o)),
        Command::Verify(o) => (o, commands::verify(o)),
        Command::Transform(o) => (o, commands::transform(o)),
        Command::Hermitize(o) => (o, commands::hermitize(o)),
        Command::Oracle(o) => (o, commands::oracle(o)),
    };
    let outcome = match result {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = outcome.emit(opts) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
