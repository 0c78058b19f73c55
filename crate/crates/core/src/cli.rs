//! Command-line dispatch for the `chord` binary.
//!
//! Flags that name an input accept either a path to a JSON file or the JSON
//! text itself (anything starting with `{` or `[`).

use std::ffi::OsString;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::chords::{chord_membership_evidence, euler_chord_solve, graph_chord_solve};
use crate::cover::compute_double_cover;
use crate::error::{ChordError, Result};
use crate::interval::{
    find_common_chord, find_common_chord_k, find_fixed_window, necklace_split, parse_pearls, Interval,
};
use crate::partition::verify_partition;
use crate::rational::{self, Rational};
use crate::service::{self, GameStore};
use crate::step::Step1d;
use crate::wire::{self, CertificateJson, ChordJson, PieceJson, SolutionJson, StepJson};

/// Exit status for command-line usage errors.
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "chord", version, about = "Exact chord solvers on metric graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed connected subset of measure r with zero integral (min degree >= 2, r in [0, 1]).
    Solve {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        f: String,
        #[arg(long, value_parser = parse_rat)]
        r: Rational,
        /// Use the Euler-circuit solver (any r in [0, |E|]).
        #[arg(long)]
        euler: bool,
    },
    /// Euler-circuit solver for Euler graphs and any r in [0, |E|].
    EulerSolve {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        f: String,
        #[arg(long, value_parser = parse_rat)]
        r: Rational,
    },
    /// Double cover by semi-simple closed paths.
    DoubleCover {
        #[arg(long)]
        graph: String,
    },
    /// Checks a partition certificate.
    PartitionVerify {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        cert: String,
    },
    /// Common chords of two step densities on [0, 1].
    Interval {
        #[arg(long)]
        f: String,
        /// Defaults to the uniform density.
        #[arg(long)]
        g: Option<String>,
        #[arg(long, value_parser = parse_rat)]
        r: Option<Rational>,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Two-cut fair split of a necklace of B and W pearls.
    Necklace { pearls: String },
    /// Runs the game service.
    GameServe {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        /// Directory for replayable JSON-lines game journals.
        #[arg(long)]
        journal: Option<String>,
    },
    /// Samples random zero-mean functions to gather evidence that r is a chord.
    Evidence {
        #[arg(long)]
        graph: String,
        #[arg(long, value_parser = parse_rat)]
        r: Rational,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Grid cells per edge for the brute-force fallback.
        #[arg(long, default_value_t = 8)]
        grain: usize,
    },
}

fn parse_rat(s: &str) -> std::result::Result<Rational, String> {
    rational::parse_rational(s).map_err(|e| e.to_string())
}

/// What a command run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn read_input(arg: &str) -> Result<String> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg).map_err(|e| ChordError::Parse(format!("cannot read {arg}: {e}")))
}

fn read_json<T: for<'de> serde::Deserialize<'de>>(arg: &str) -> Result<T> {
    wire::from_json(&read_input(arg)?)
}

fn read_step1d(arg: &str) -> Result<Step1d> {
    wire::step1d_from_json(&read_json::<Vec<PieceJson>>(arg)?)
}

#[derive(Serialize)]
struct IntervalOutput {
    #[serde(skip_serializing_if = "Option::is_none")]
    chord: Option<ChordJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    window: Option<Interval>,
}

fn run(cmd: Command) -> Result<String> {
    Ok(match cmd {
        Command::Solve { graph, f, r, euler } => {
            let g = wire::parse_graph(&read_input(&graph)?)?;
            let f = wire::step_from_json(&g, &read_json::<StepJson>(&f)?)?;
            let sol = if euler { euler_chord_solve(&g, &f, &r)? } else { graph_chord_solve(&g, &f, &r)? };
            wire::to_json(&SolutionJson::new(&g, &sol))
        }
        Command::EulerSolve { graph, f, r } => {
            let g = wire::parse_graph(&read_input(&graph)?)?;
            let f = wire::step_from_json(&g, &read_json::<StepJson>(&f)?)?;
            wire::to_json(&SolutionJson::new(&g, &euler_chord_solve(&g, &f, &r)?))
        }
        Command::DoubleCover { graph } => {
            let g = wire::parse_graph(&read_input(&graph)?)?;
            wire::to_json(&wire::cover_to_json(&g, compute_double_cover(&g)?.paths()))
        }
        Command::PartitionVerify { graph, cert } => {
            let g = wire::parse_graph(&read_input(&graph)?)?;
            let cert = read_json::<CertificateJson>(&cert)?.to_certificate(&g)?;
            wire::to_json(&serde_json::json!({ "valid": verify_partition(&g, &cert) }))
        }
        Command::Interval { f, g, r, k } => {
            if r.is_none() && k.is_none() {
                return Err(ChordError::precondition("give --r, --k or both"));
            }
            let f = read_step1d(&f)?;
            let g = match &g {
                Some(g) => Some(read_step1d(g)?),
                None => None,
            };
            let uniform = Step1d::constant(rational::one(), rational::one());
            let chord = match &r {
                Some(r) => Some(ChordJson::from(&find_common_chord(&f, g.as_ref().unwrap_or(&uniform), r)?)),
                None => None,
            };
            let window = match (k, &g) {
                (Some(k), Some(g)) => Some(find_common_chord_k(&f, g, k)?),
                (Some(k), None) => Some(find_fixed_window(&f, k)?),
                (None, _) => None,
            };
            wire::to_json(&IntervalOutput { chord, window })
        }
        Command::Necklace { pearls } => wire::to_json(&necklace_split(&parse_pearls(&pearls)?)?),
        Command::GameServe { port, journal } => {
            let store = match journal {
                Some(dir) => GameStore::with_journal(dir)?,
                None => GameStore::in_memory(),
            };
            let runtime = tokio::runtime::Runtime::new().map_err(|e| ChordError::internal(e.to_string()))?;
            runtime
                .block_on(service::serve(Arc::new(store), port))
                .map_err(|e| ChordError::precondition(format!("cannot serve on port {port}: {e}")))?;
            String::new()
        }
        Command::Evidence { graph, r, trials, seed, grain } => {
            let g = wire::parse_graph(&read_input(&graph)?)?;
            wire::to_json(&chord_membership_evidence(&g, &r, trials, seed, grain)?)
        }
    })
}

/// Parses `argv` (program name first) and runs the command.
pub fn dispatch<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match run(cli.command) {
        Ok(out) => Outcome { code: 0, stdout: out, stderr: String::new() },
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: e.to_string() },
    }
}
