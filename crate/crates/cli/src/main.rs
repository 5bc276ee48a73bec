//! Command-line front end: single scenario reports, figure sweeps and the boosted CHSH demo.

use std::f64::consts::SQRT_2;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use relqi::bellcorr::{boosted_chsh_demo, BellSettings};
use relqi::relboost::{ScenarioParams, SpinFamily};
use relqi::runner::{run_scenario, run_sweep, ScenarioConfig, SweepSpec};
use relqi::Error;

const EXIT_CONFIG: u8 = 2;
const EXIT_TOLERANCE: u8 = 3;
const EXIT_OTHER: u8 = 1;

#[derive(Parser)]
#[command(name = "relqi", version, about = "Entanglement and Bell correlations of boosted spin-1/2 pairs")]
struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Tolerance for residual checks (scenario: 1e-9, chsh: 1e-8 by default).
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Read angles in configuration files as degrees.
    #[arg(long, global = true)]
    degrees: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report entanglement before and after the boost for one JSON scenario.
    Scenario {
        config: PathBuf,
    },
    /// Tabulate a parameter sweep as CSV.
    Sweep(SweepArgs),
    /// Compare CHSH values of a singlet before and after an observer boost.
    Chsh {
        /// Particle speed.
        #[arg(long)]
        v: f64,
        /// Observer speed.
        #[arg(long)]
        w: f64,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SweepArgs {
    /// fig1, fig2, fig3 or fig4.
    #[arg(long)]
    preset: Option<String>,
    /// JSON sweep specification.
    #[arg(long)]
    spec: Option<PathBuf>,
}

enum Failure {
    Input(String),
    Tolerance(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) => Failure::Other(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Other(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Scenario { config } => {
            let cfg = ScenarioConfig::from_json(&read(&config)?, cli.degrees)
                .map_err(|e| Failure::Input(format!("{}: {e}", config.display())))?;
            let report = run_scenario(&cfg)?;
            let json = serde_json::to_string_pretty(&report).expect("report serialises") + "\n";
            emit(cli.out.as_deref(), &json)?;
            let tol = cli.tol.unwrap_or(1e-9);
            if report.max_residual > tol {
                return Err(Failure::Tolerance(format!(
                    "max residual {:e} exceeds tolerance {tol:e}",
                    report.max_residual
                )));
            }
            Ok(())
        }
        Command::Sweep(args) => {
            let spec = match (args.preset, args.spec) {
                (Some(name), _) => SweepSpec::preset(&name)?,
                (None, Some(path)) => SweepSpec::from_json(&read(&path)?, cli.degrees)
                    .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?,
                (None, None) => unreachable!("clap requires one of --preset, --spec"),
            };
            let table = run_sweep(&spec)?;
            let out = cli.out.or(spec.out);
            emit(out.as_deref(), &table.to_string())
        }
        Command::Chsh { v, w } => {
            let singlet = SpinFamily::BellType { beta: -std::f64::consts::FRAC_PI_4 };
            let params = ScenarioParams::from_speeds(singlet, 0.0, v, w)?;
            let demo = boosted_chsh_demo(&params, &BellSettings::standard())?;
            let text = format!(
                "v = {v}, w = {w}, delta = {:.12}\nS_initial               = {:+.12}\nS_boosted_fixed         = {:+.12}\nS_boosted_transformed   = {:+.12}\n",
                demo.delta, demo.s_initial, demo.s_boosted_fixed, demo.s_boosted_transformed
            );
            emit(cli.out.as_deref(), &text)?;
            let tol = cli.tol.unwrap_or(1e-8);
            let gap = (demo.s_boosted_transformed.abs() - 2.0 * SQRT_2).abs();
            if gap > tol {
                return Err(Failure::Tolerance(format!("|S_boosted_transformed| misses 2√2 by {gap:e}")));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_CONFIG)
        }
        Err(Failure::Tolerance(msg)) => {
            eprintln!("tolerance failure: {msg}");
            ExitCode::from(EXIT_TOLERANCE)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_OTHER)
        }
    }
}
