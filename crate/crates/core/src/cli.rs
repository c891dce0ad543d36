//! Command-line front end: `point`, `sweep`, `grid` and `spectrum`.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::model::ModelParams;
use crate::sweep::{self, Format, Method, SweepError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "tcm-lab",
    version,
    about = "Tavis-Cummings ground states: projected coherent state vs exact diagonalization"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a single (gamma, delta) point.
    Point(PointArgs),
    /// Sweep gamma at fixed detuning.
    Sweep(SweepArgs),
    /// Evaluate a (delta, gamma) grid, delta outer.
    Grid(GridArgs),
    /// Lowest eigenvalues across all constant-of-motion sectors.
    Spectrum(SpectrumArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file (standard output when absent).
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(id = "detuning", required = true, multiple = false)]
pub struct DetuningArgs {
    /// Detuning Δ = 1 − ω_A.
    #[arg(long, allow_negative_numbers = true)]
    pub delta: Option<f64>,
    /// Atomic splitting ω_A in units of the field frequency.
    #[arg(long = "omega-a", allow_negative_numbers = true)]
    pub omega_a: Option<f64>,
}

impl DetuningArgs {
    fn delta(&self) -> f64 {
        match (self.delta, self.omega_a) {
            (Some(d), _) => d,
            (None, Some(w)) => 1.0 - w,
            (None, None) => unreachable!("clap enforces one of --delta / --omega-a"),
        }
    }
}

#[derive(Debug, Args)]
pub struct PointArgs {
    #[arg(long)]
    pub n_atoms: u32,
    #[command(flatten)]
    pub detuning: DetuningArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: f64,
    #[arg(long, value_enum, default_value_t = Method::Both)]
    pub method: Method,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct GammaRange {
    #[arg(long, allow_negative_numbers = true)]
    pub gamma_min: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma_max: f64,
    #[arg(long)]
    pub gamma_steps: usize,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub n_atoms: u32,
    #[command(flatten)]
    pub detuning: DetuningArgs,
    #[command(flatten)]
    pub range: GammaRange,
    #[arg(long, value_enum, default_value_t = Method::Both)]
    pub method: Method,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long)]
    pub n_atoms: u32,
    #[command(flatten)]
    pub range: GammaRange,
    #[arg(long, allow_negative_numbers = true)]
    pub delta_min: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub delta_max: f64,
    #[arg(long)]
    pub delta_steps: usize,
    #[arg(long, value_enum, default_value_t = Method::Both)]
    pub method: Method,
    /// Skip exact diagonalization (same as --method projected).
    #[arg(long)]
    pub projected_only: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub n_atoms: u32,
    #[command(flatten)]
    pub detuning: DetuningArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: f64,
    /// Number of levels.
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn params(n_atoms: u32, delta: f64, gamma: f64) -> Result<ModelParams, SweepError> {
    if n_atoms == 0 {
        return Err(SweepError::Range {
            flag: "--n-atoms",
            reason: "must be at least 1".into(),
        });
    }
    Ok(ModelParams::new(n_atoms, delta, gamma)?)
}

fn open_output(path: &Option<PathBuf>) -> io::Result<Option<BufWriter<File>>> {
    path.as_ref().map(|p| File::create(p).map(BufWriter::new)).transpose()
}

fn execute(command: &Command, stdout: &mut dyn Write) -> Result<(), SweepError> {
    let output = match command {
        Command::Point(a) => &a.output,
        Command::Sweep(a) => &a.output,
        Command::Grid(a) => &a.output,
        Command::Spectrum(a) => &a.output,
    };
    // compute everything before touching the output file
    let mut buffer = Vec::new();
    match command {
        Command::Point(a) => {
            let p = params(a.n_atoms, a.detuning.delta(), a.gamma)?;
            let record = sweep::run_point(&p, a.method)?;
            sweep::write_record(&mut buffer, &record, output.format)?;
        }
        Command::Sweep(a) => {
            let gammas = sweep::linspace(
                "--gamma-min/--gamma-max/--gamma-steps",
                a.range.gamma_min,
                a.range.gamma_max,
                a.range.gamma_steps,
            )?;
            let base = params(a.n_atoms, a.detuning.delta(), gammas[0])?;
            let records = sweep::run_sweep(&base, &gammas, a.method)?;
            sweep::write_records(&mut buffer, &records, output.format)?;
        }
        Command::Grid(a) => {
            let gammas = sweep::grid_axis(
                "--gamma-min/--gamma-max/--gamma-steps",
                a.range.gamma_min,
                a.range.gamma_max,
                a.range.gamma_steps,
            )?;
            let deltas = sweep::grid_axis(
                "--delta-min/--delta-max/--delta-steps",
                a.delta_min,
                a.delta_max,
                a.delta_steps,
            )?;
            params(a.n_atoms, deltas[0], gammas[0])?;
            let method = if a.projected_only { Method::Projected } else { a.method };
            let records = sweep::run_grid(a.n_atoms, &deltas, &gammas, method)?;
            sweep::write_records(&mut buffer, &records, output.format)?;
        }
        Command::Spectrum(a) => {
            let p = params(a.n_atoms, a.detuning.delta(), a.gamma)?;
            let levels = sweep::run_spectrum(&p, a.k as usize)?;
            sweep::write_spectrum(&mut buffer, &levels, output.format)?;
        }
    }
    match open_output(&output.output)? {
        Some(mut file) => {
            file.write_all(&buffer)?;
            file.flush()?;
        }
        None => stdout.write_all(&buffer)?,
    }
    Ok(())
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = write!(stderr, "{}", e.render());
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match execute(&cli.command, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_usage() {
                EXIT_USAGE
            } else {
                EXIT_SOLVER
            }
        }
    }
}
