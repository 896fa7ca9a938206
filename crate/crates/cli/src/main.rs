//! Command-line front end: trajectory runs, invariant and oracle checks, and
//! sudden-death sweeps.
//!
//! Exit codes: 0 on success or a passing check, 1 when a check fails, 2 for
//! usage and configuration errors.

mod commands;
mod config;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

use commands::{evolve, invariant_check, oracle_check, sudden_death, Outcome};
use config::{ConfigOverrides, RunConfig};
use output::open_sink;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Parser)]
#[command(
    name = "doublejc",
    version,
    about = "Exact dynamics and entanglement analysis of two independent atom-cavity pairs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonIo {
    /// JSON run configuration; defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Output destination (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve the configured state and stream one row of entanglement
    /// quantities per sample time.
    Evolve {
        #[command(flatten)]
        io: CommonIo,
        #[command(flatten)]
        overrides: ConfigOverrides,
        /// Output format.
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },

    /// Track the conserved quantities along the configured trajectory; fails
    /// when the pair-partition entanglement drifts.
    InvariantCheck {
        #[command(flatten)]
        io: CommonIo,
        #[command(flatten)]
        overrides: ConfigOverrides,
        /// Deliberately corrupt the propagation (negative control for the
        /// check itself).
        #[arg(long, hide = true)]
        corrupt_propagator: bool,
    },

    /// Propagate random cases with both the closed-form maps and the
    /// diagonalization reference and compare.
    OracleCheck {
        /// Output destination (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Master seed for the case set.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Number of random cases.
        #[arg(long, default_value_t = 1000)]
        cases: usize,
    },

    /// Sweep the mixing angle of the phi family and tabulate sudden-death
    /// times.
    SuddenDeath {
        #[command(flatten)]
        io: CommonIo,
        #[command(flatten)]
        overrides: ConfigOverrides,
        /// Smallest mixing angle (radians).
        #[arg(long, default_value_t = 0.0)]
        alpha_min: f64,
        /// Largest mixing angle (radians).
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2)]
        alpha_max: f64,
        /// Number of sweep points, endpoints included.
        #[arg(long, default_value_t = 50)]
        n_alpha: usize,
    },
}

fn load_config(io: &CommonIo, overrides: &ConfigOverrides) -> Result<RunConfig, String> {
    let mut cfg = match &io.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    overrides.apply(&mut cfg)?;
    Ok(cfg)
}

fn dispatch(cli: Cli) -> Result<Outcome, String> {
    match cli.command {
        Command::Evolve {
            io,
            overrides,
            format,
        } => {
            let cfg = load_config(&io, &overrides)?;
            let mut sink = open_sink(io.out.as_ref()).map_err(|e| e.to_string())?;
            evolve::run(&cfg, format, &mut sink)
        }
        Command::InvariantCheck {
            io,
            overrides,
            corrupt_propagator,
        } => {
            let cfg = load_config(&io, &overrides)?;
            let mut sink = open_sink(io.out.as_ref()).map_err(|e| e.to_string())?;
            invariant_check::run(&cfg, corrupt_propagator, &mut sink)
        }
        Command::OracleCheck { out, seed, cases } => {
            let mut sink = open_sink(out.as_ref()).map_err(|e| e.to_string())?;
            oracle_check::run(seed, cases, &mut sink)
        }
        Command::SuddenDeath {
            io,
            overrides,
            alpha_min,
            alpha_max,
            n_alpha,
        } => {
            let cfg = load_config(&io, &overrides)?;
            let mut sink = open_sink(io.out.as_ref()).map_err(|e| e.to_string())?;
            let sweep = sudden_death::SweepArgsResolved {
                alpha_min,
                alpha_max,
                n_alpha,
            };
            sudden_death::run(&cfg, &sweep, &mut sink)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(Outcome::Done) | Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
