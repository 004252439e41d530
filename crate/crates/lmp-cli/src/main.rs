//! Command-line front end: equivalence checks, distances, model checking,
//! composition, partition refinement, model generation, and a self-test
//! over the built-in example models.
//!
//! Output is JSON by default (`--human` switches to plain text). Exit
//! codes: 0 success (`check-equiv`: equivalent), 1 `check-equiv` found the
//! pair inequivalent or `selftest` failed, 2 any error. Errors are printed
//! as one JSON line on stderr.

mod commands;
mod output;
mod selftest;
mod spec;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "lmp", version, about = "Finite labelled Markov processes toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct PairArgs {
    /// Model file.
    model: PathBuf,
    /// Left subdistribution: `dirac:NAME`, `initial`, or a JSON vector.
    #[arg(long)]
    mu: String,
    /// Right subdistribution: `dirac:NAME`, `initial`, or a JSON vector.
    #[arg(long)]
    nu: String,
    /// Plain-text output instead of JSON.
    #[arg(long)]
    human: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide subdistribution bisimilarity exactly (rational models only).
    CheckEquiv(PairArgs),
    /// Certified bounds on the discounted trace distance.
    Distance {
        #[command(flatten)]
        pair: PairArgs,
        /// Discount factor in (0, 1], e.g. `1`, `0.9`, `9/10`.
        #[arg(long)]
        c: String,
        /// Stop when the bounds gap is at most this tolerance.
        #[arg(long)]
        tol: Option<String>,
        /// Explore words up to this length.
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Bounds on the equivalence metric between two models.
    EquivMetric {
        model1: PathBuf,
        model2: PathBuf,
        #[arg(long)]
        tol: Option<String>,
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long)]
        human: bool,
    },
    /// Model-check a formula against a subdistribution or state.
    Mc {
        model: PathBuf,
        /// Subdistribution to check; state logic requires `dirac:NAME`.
        #[arg(long)]
        dist: String,
        /// Formula text in the selected logic's grammar.
        #[arg(long)]
        formula: String,
        /// Logic: `l0` (default), `state`, or `quant`.
        #[arg(long, default_value = "l0")]
        logic: String,
        /// Discount for the quantitative logic.
        #[arg(long, default_value = "1")]
        c: String,
        #[arg(long)]
        human: bool,
    },
    /// Write the synchronous product of two models.
    Compose {
        model1: PathBuf,
        model2: PathBuf,
        /// Output model file.
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        human: bool,
    },
    /// State-bisimulation partition of a rational model.
    Refine {
        model: PathBuf,
        #[arg(long)]
        human: bool,
    },
    /// Generate one of the built-in model families.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Run the built-in example fixture suite.
    Selftest,
}

#[derive(Subcommand)]
enum GenFamily {
    /// Unit-interval kernel with two atoms, discretized exactly.
    Ex1 {
        /// Number of grid cells on (0, 1).
        #[arg(long, default_value_t = 8)]
        cells: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Triadic middle-thirds kernel family, discretized exactly.
    Cantor {
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// Largest action index; actions are `a0..a<max-action>`.
        #[arg(long, default_value_t = 2)]
        max_action: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Heated-rooms process over a temperature grid (float mode).
    Heater {
        #[arg(long, default_value_t = 1)]
        rooms: usize,
        #[arg(long, default_value_t = 10.0)]
        ambient: f64,
        /// Outward transfer rate, shared by all rooms.
        #[arg(long, default_value_t = 0.3)]
        transfer: f64,
        /// Cross-room transfer rate, shared by all off-diagonal pairs.
        #[arg(long, default_value_t = 0.0)]
        cross: f64,
        /// Heater gain, shared by all rooms.
        #[arg(long, default_value_t = 5.0)]
        gain: f64,
        /// Noise standard deviation, shared by all rooms.
        #[arg(long, default_value_t = 1.5)]
        sd: f64,
        #[arg(long, default_value_t = 0.0)]
        tmin: f64,
        #[arg(long, default_value_t = 30.0)]
        tmax: f64,
        #[arg(long, default_value_t = 15)]
        cells: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::CheckEquiv(args) => commands::check_equiv(&args),
        Command::Distance {
            pair,
            c,
            tol,
            horizon,
        } => commands::distance(&pair, &c, tol.as_deref(), horizon),
        Command::EquivMetric {
            model1,
            model2,
            tol,
            horizon,
            human,
        } => commands::equiv_metric(&model1, &model2, tol.as_deref(), horizon, human),
        Command::Mc {
            model,
            dist,
            formula,
            logic,
            c,
            human,
        } => commands::model_check(&model, &dist, &formula, &logic, &c, human),
        Command::Compose {
            model1,
            model2,
            output,
            human,
        } => commands::compose(&model1, &model2, &output, human),
        Command::Refine { model, human } => commands::refine(&model, human),
        Command::Gen { family } => commands::generate(family),
        Command::Selftest => selftest::run(),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("{}", output::error_line(&err));
            std::process::exit(2);
        }
    }
}
