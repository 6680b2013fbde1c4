//! Command-line front end: scene files in, exact values, bounds and reports out.
//!
//! Exit codes: 0 success, 2 parse or usage error, 3 evaluation error, 4 a
//! requested check failed.

pub mod commands;
pub mod error;
pub mod output;
pub mod polyparse;
pub mod scene_file;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "padic-wf", version, about = "Exact p-adic Fourier transforms and wave-front bounds")]
pub struct Cli {
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the localized transform of a monomial or polynomial scene.
    Eval {
        scene: PathBuf,
        /// Frequency, comma separated rationals such as `1/3,2/3`.
        #[arg(long)]
        xi: String,
        /// Residue cube `b1,..,bn@level`; defaults to the whole of `Z_p^n`.
        #[arg(long)]
        cube: Option<String>,
        /// Also compute an independent oracle at this level (or shell depth) and compare.
        #[arg(long)]
        oracle_level: Option<u32>,
    },
    /// Build the wave-front bound of a charts scene.
    Bound { scene: PathBuf },
    /// Non-transversality locus of a curve (exact) or polymap (sampled) scene.
    Pcrit { scene: PathBuf },
    /// Run the probe plan of a scene.
    Probe { scene: PathBuf },
    /// Run a verification suite.
    Verify {
        scene: PathBuf,
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let out = cli.out.as_deref();
    let result = match &cli.command {
        Command::Eval { scene, xi, cube, oracle_level } => commands::open(scene, "eval", out)
            .and_then(|(f, s)| commands::eval(&f, &s, xi, cube.as_deref(), *oracle_level)),
        Command::Bound { scene } => commands::open(scene, "bound", out).and_then(|(f, s)| commands::bound(&f, &s)),
        Command::Pcrit { scene } => commands::open(scene, "pcrit", out).and_then(|(f, s)| commands::pcrit(&f, &s)),
        Command::Probe { scene } => commands::open(scene, "probe", out).and_then(|(f, s)| commands::probe(&f, &s)),
        Command::Verify { scene, suite, seed, trials } => commands::open(scene, "verify", out)
            .and_then(|(f, s)| commands::verify(&f, &s, suite, *seed, *trials)),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("padic-wf: {e}");
            e.exit_code()
        }
    }
}
