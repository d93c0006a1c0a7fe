//! Command-line driver: verification, constructions and the seeded property
//! suites over the exact graded Lie calculus.

use qlag_cli::commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "qlag",
    version,
    about = "Exact checks for two-term L-infinity algebras, quasi Q-structures on linear groupoids, and bialgebra classification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a document (kind-dispatched) and print the report.
    Verify { file: PathBuf },
    /// Compose two morphisms: `compose f.json g.json` applies f first.
    Compose { f: PathBuf, g: PathBuf },
    /// Maurer-Cartan residual in a chosen dgla.
    Mc {
        /// groupoid | bigbracket | mvf
        #[arg(long)]
        dgla: String,
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
    },
    /// Gauge-transform a quasi Q-structure by a parameter document.
    Gauge {
        #[arg(long)]
        b: PathBuf,
        file: PathBuf,
    },
    /// Classify bialgebra-type data by its component mask and verdict.
    Classify { file: PathBuf },
    /// Centrally extend a quasi Q-structure by cocycle data.
    Extend {
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        xi: PathBuf,
        file: PathBuf,
    },
    /// Round-trip a two-term structure through its groupoid model.
    Roundtrip { file: PathBuf },
    /// Build and verify the dual linear quasi-Poisson data.
    Dualize { file: PathBuf },
    /// Emit a deterministic random document.
    Random {
        #[arg(long)]
        kind: String,
        #[arg(long, default_value = "3,2")]
        dims: String,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        density: Option<String>,
    },
    /// Run the seeded property batteries and print a pass/fail matrix.
    Suite {
        #[arg(long, default_value_t = 10)]
        seeds: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = commands::Ctx { color: std::env::var_os("NO_COLOR").is_none() };
    let run = || -> anyhow::Result<i32> {
        match &cli.command {
            Command::Verify { file } => commands::cmd_verify(&ctx, file),
            Command::Compose { f, g } => commands::cmd_compose(&ctx, f, g),
            Command::Mc { dgla, input } => commands::cmd_mc(&ctx, dgla, input),
            Command::Gauge { b, file } => commands::cmd_gauge(&ctx, b, file),
            Command::Classify { file } => commands::cmd_classify(&ctx, file),
            Command::Extend { h, xi, file } => commands::cmd_extend(&ctx, h, xi, file),
            Command::Roundtrip { file } => commands::cmd_roundtrip(&ctx, file),
            Command::Dualize { file } => commands::cmd_dualize(&ctx, file),
            Command::Random { kind, dims, seed, density } => {
                commands::cmd_random(&ctx, kind, dims, *seed, density.as_deref())
            }
            Command::Suite { seeds } => commands::cmd_suite(&ctx, *seeds),
        }
    };
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
