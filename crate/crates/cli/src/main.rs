//! `rmframe`: rotation-minimizing frames, ruled surfaces and curve checks
//! from JSON curve specifications.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "rmframe",
    version,
    about = "Rotation-minimizing frames along curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    opts: Options,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// RM frame and natural curvatures as CSV.
    Frames,
    /// Ruled surface swept by a normal field, as OBJ plus a JSON sidecar.
    Surface,
    /// Run checks and write a JSON report; exit 1 if any check fails.
    Check,
    /// Involute of a unit-speed curve, with the evolute's RM residual.
    Involute {
        /// Parameter where the involute touches the curve (outside the window).
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
    },
    /// Integrate a magnetic trajectory in complex space.
    Magnetic,
    /// Line fit of the normal development (spherical-curve test).
    Spherical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Ambient {
    Euclid3,
    Hyp3,
    Complex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Rm,
    #[value(name = "rm_j")]
    RmJ,
    Speed,
    Planar,
    Spherical,
    Developable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldSource {
    Rmf,
    Frenet,
    Tangent,
    File(PathBuf),
}

fn parse_field(s: &str) -> Result<FieldSource, String> {
    match s {
        "rmf" => Ok(FieldSource::Rmf),
        "frenet" => Ok(FieldSource::Frenet),
        "tangent" => Ok(FieldSource::Tangent),
        _ => match s.strip_prefix("file:") {
            Some(path) if !path.is_empty() => Ok(FieldSource::File(path.into())),
            _ => Err(format!(
                "expected rmf, frenet, tangent or file:PATH, got '{s}'"
            )),
        },
    }
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number, got '{s}'")),
    }
}

#[derive(Debug, clap::Args)]
pub struct Options {
    /// Input JSON (`-` for stdin).
    #[arg(long, short, global = true)]
    pub input: Option<PathBuf>,
    /// Output file; standard output when omitted (required for `surface`).
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// RK4 steps; outputs have one more sample than steps.
    #[arg(long, global = true, default_value_t = 1999, value_parser = clap::value_parser!(u64).range(1..))]
    pub steps: u64,
    /// Pass/fail threshold, overriding every per-check default.
    #[arg(long, global = true, env = "RMFRAME_TOL", value_parser = positive)]
    pub tol: Option<f64>,
    #[arg(long, global = true, default_value_t = -1.0, allow_negative_numbers = true)]
    pub lambda_min: f64,
    #[arg(
        long,
        global = true,
        default_value_t = 1.0,
        allow_negative_numbers = true
    )]
    pub lambda_max: f64,
    /// Mesh rows (samples along the curve).
    #[arg(long, global = true, default_value_t = 200, value_parser = clap::value_parser!(u64).range(5..))]
    pub grid_rows: u64,
    /// Mesh columns (samples along each ruling).
    #[arg(long, global = true, default_value_t = 11, value_parser = clap::value_parser!(u64).range(2..))]
    pub grid_cols: u64,
    /// Normal field: rmf, frenet, tangent or file:PATH (a `frames` CSV).
    #[arg(long, global = true, default_value = "rmf", value_parser = parse_field)]
    pub field: FieldSource,
    /// Checks to run (repeatable or comma separated).
    #[arg(long, global = true, value_enum, value_delimiter = ',')]
    pub check: Vec<CheckKind>,
    /// Floor mesh z coordinates at this value (half-space meshes).
    #[arg(long, global = true, value_parser = positive)]
    pub clamp_z: Option<f64>,
    /// Override the ambient space of the input curve.
    #[arg(long, global = true, value_enum)]
    pub ambient: Option<Ambient>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Frames => commands::frames(&cli.opts),
        Command::Surface => commands::surface(&cli.opts),
        Command::Check => commands::check(&cli.opts),
        Command::Involute { c } => commands::involute(&cli.opts, *c),
        Command::Magnetic => commands::magnetic(&cli.opts),
        Command::Spherical => commands::spherical(&cli.opts),
    };
    match result {
        Ok(status) => ExitCode::from(status as u8),
        Err(failure) => {
            eprintln!("rmframe: {failure}");
            ExitCode::from(failure.code())
        }
    }
}
