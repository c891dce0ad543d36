//! λ staircase and energy along a coupling sweep, written as CSV.
//!
//! ```text
//! cargo run --release --example gamma_sweep -- 0.2 > sweep.csv
//! ```
//! The argument is the detuning Δ; at Δ = 0 the energy steps are flat,
//! away from resonance they are sloped.

use std::io::{self, Write};

use tcm_lab::model::ModelParams;
use tcm_lab::sweep::{self, Format, Method};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let delta: f64 = std::env::args().nth(1).map_or(Ok(0.2), |s| s.parse())?;
    let gammas = sweep::linspace("gamma", 0.0, 2.0, 201)?;
    let base = ModelParams::new(20, delta, 0.0)?;
    let records = sweep::run_sweep(&base, &gammas, Method::Both)?;

    let mut steps = 0;
    for pair in records.windows(2) {
        if pair[1].lambda_exact != pair[0].lambda_exact {
            steps += 1;
        }
    }
    eprintln!(
        "Δ = {delta}: exact λ climbs from {} to {} in {steps} steps",
        records[0].lambda_exact.unwrap(),
        records.last().unwrap().lambda_exact.unwrap()
    );

    let stdout = io::stdout();
    let mut out = stdout.lock();
    sweep::write_records(&mut out, &records, Format::Csv)?;
    out.flush()?;
    Ok(())
}
