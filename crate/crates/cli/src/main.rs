use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

mod commands;
mod error;
mod report;

use error::CliError;
use report::{Format, Report};

#[derive(Debug, Parser)]
#[command(name = "nctorus", version, about = "K-homology numerics for the rotation algebras A_θ")]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Kernel threshold for exact-tier index computations.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol_rank: f64,
    /// Largest accepted distance of a pairing from an integer.
    #[arg(long, global = true, default_value_t = 0.1)]
    tol_round: f64,
    /// Kernel threshold for the compressed Dirac index.
    #[arg(long, global = true, default_value_t = 0.03)]
    tol_compressed: f64,
    /// Seed for randomized checks (e.g. the conjugating unitary).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Digits used for `golden` and other named constants.
    #[arg(long, global = true, env = "NCG_TORUS_PRECISION", default_value_t = 60)]
    precision: usize,
    /// Include wall-clock time in the report (makes it non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "name")]
enum Command {
    /// Continued fraction and convergent table of θ.
    Cf {
        #[arg(long)]
        theta: String,
        #[arg(long, default_value_t = 20)]
        depth: usize,
    },
    /// Index pairing of a named Fredholm module with a K-theory class.
    Pair {
        /// z0, z0prime, z1, z1prime or dirac.
        #[arg(long)]
        module: String,
        /// 1, 0, p, U, V, U^k or V^k.
        #[arg(long)]
        class: String,
        #[arg(long)]
        theta: String,
        /// Truncation half-width.
        #[arg(long = "N", default_value_t = 16)]
        n: usize,
        /// Fiber dimension (odd modules) or amplification (clock-shift modules).
        #[arg(long, default_value_t = 1)]
        fiber: usize,
        /// Conjugate the module by a random diagonal unitary drawn from --seed.
        #[arg(long)]
        conjugate: bool,
    },
    /// Exactness of a builtin six-term sequence.
    Sequence {
        #[arg(long, value_enum)]
        which: SequenceKind,
        /// Replace a map's matrix: `name=a,b,...` (row-major, same shape).
        #[arg(long)]
        perturb: Vec<String>,
    },
    /// Bratteli tower, K-homology coefficients and trace weights.
    Tower {
        #[arg(long)]
        theta: String,
        #[arg(long)]
        depth: usize,
        /// Also compute the trace of the image of this class at level 1.
        #[arg(long, value_enum)]
        trace: Option<TraceClass>,
    },
    /// Matrices of a representation as JSON.
    RepDump {
        #[arg(long, value_enum)]
        rep: RepKind,
        #[arg(long)]
        theta: String,
        #[arg(long = "N", default_value_t = 4)]
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum SequenceKind {
    Khomology,
    Ktheory,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum TraceClass {
    P1,
    One,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum RepKind {
    Clock,
    Z1,
    Z1prime,
    Dirac,
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    for (name, v) in [("tol-rank", cli.tol_rank), ("tol-round", cli.tol_round), ("tol-compressed", cli.tol_compressed)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(CliError::input(format!("--{name} must be positive, got {v}")));
        }
    }
    let start = Instant::now();
    let mut report = commands::dispatch(cli)?;
    if cli.timing {
        report.wall_time = Some(start.elapsed().as_secs_f64());
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = match run(&cli) {
        Ok(report) => match report.render(cli.format) {
            Ok(text) => (text, report.exit_code()),
            Err(e) => {
                eprintln!("error: {}", e.message);
                (e.render(), e.code)
            }
        },
        Err(e) => {
            eprintln!("error: {}", e.message);
            (e.render(), e.code)
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &text).map_err(|e| e.to_string()),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
