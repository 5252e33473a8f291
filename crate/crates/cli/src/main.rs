use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use g2cb_core::report::curve_io::{field_from_arg, CurveSpec};
use g2cb_core::report::{self, commands, CheckGroup, VerifyConfig};
use g2cb_core::Error;
use serde_json::Value;

const EXIT_CERTIFICATION: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "g2cb", version, about = "Exact checks for genus-2 classifying maps, Kummer quartics and the Steiner bundle")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full certification pipeline and emit a JSON report.
    Verify {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = report::DEFAULT_SAMPLES)]
        samples: usize,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Reinterpret the curve over another field: `rationals` or a prime.
        #[arg(long)]
        field: Option<String>,
        /// Comma-separated subset of check groups.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        /// Record wall-clock timings in the report's runtime section.
        #[arg(long)]
        timings: bool,
    },
    /// Print the four quadrics defining the classifying map.
    Quadrics {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        field: Option<String>,
    },
    /// Classify the conic fiber over a point of P^3.
    Fiber {
        #[arg(long)]
        curve: PathBuf,
        /// Coordinates "p0,p1,p2,p3".
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        field: Option<String>,
    },
    /// Interpolate the Kummer quartic and certify its nodes.
    Kummer {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 60)]
        samples: usize,
        #[arg(long)]
        field: Option<String>,
    },
    /// Cohomology table of the twists A*(k).
    Cohomology {
        #[arg(long, allow_hyphen_values = true, default_value_t = -3)]
        min: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 2)]
        max: i64,
    },
    /// Chern data, stability, End and the normal-bundle splitting.
    BundleReport,
}

fn load_curve(path: &Path, field: Option<&str>) -> Result<g2cb_core::curve::HyperellipticCurve, Error> {
    let spec = CurveSpec::read(path)?;
    let field = field.map(field_from_arg).transpose()?;
    spec.curve(field)
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print_json(v: &Value) {
    emit(&(serde_json::to_string_pretty(v).expect("json") + "\n"));
}

fn exit_for(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(if e.is_input_error() { EXIT_INPUT } else { EXIT_CERTIFICATION })
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Verify { curve, seed, samples, out, field, checks, workers, cache_dir, timings } => {
            let mut cfg = VerifyConfig::new(CurveSpec::read(&curve)?);
            cfg.field = field.as_deref().map(field_from_arg).transpose()?;
            cfg.seed = seed;
            cfg.samples = samples;
            cfg.checks = checks.iter().map(|c| c.parse::<CheckGroup>()).collect::<Result<_, _>>()?;
            cfg.workers = workers;
            cfg.cache_dir = cache_dir;
            cfg.timings = timings;
            let report = report::run_verify(&cfg)?;
            let text = report.to_json();
            match out {
                Some(path) => fs::write(&path, &text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?,
                None => emit(&text),
            }
            for c in report.checks.iter().filter(|c| c.status == report::Status::Fail) {
                eprintln!("FAIL {}: {}", c.name, c.reason.as_deref().unwrap_or(""));
            }
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(EXIT_CERTIFICATION) })
        }
        Command::Quadrics { curve, field } => {
            let (text, json) = commands::quadrics(&load_curve(&curve, field.as_deref())?)?;
            emit(&text);
            print_json(&json);
            Ok(ExitCode::SUCCESS)
        }
        Command::Fiber { curve, point, field } => {
            print_json(&commands::fiber(&load_curve(&curve, field.as_deref())?, &point)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Kummer { curve, seed, samples, field } => {
            print_json(&commands::kummer(&load_curve(&curve, field.as_deref())?, samples, seed)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Cohomology { min, max } => {
            print_json(&commands::cohomology(min, max)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::BundleReport => {
            print_json(&commands::bundle_report()?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    run(cli).unwrap_or_else(|e| exit_for(&e))
}
