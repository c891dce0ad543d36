//! Coarse map of the (Δ, γ) plane from the projected state alone.
//!
//! ```text
//! cargo run --release --example phase_map
//! ```
//! Each cell shows the phase region (`N`/`S` for the poles) or, inside the
//! parallels, the projected λ relative to −j.

use tcm_lab::model::{classify_region, ModelParams, PhaseRegion};
use tcm_lab::sweep::{self, Method};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n_atoms = 20;
    let deltas = sweep::linspace("delta", -2.0, 4.0, 25)?;
    let gammas = sweep::linspace("gamma", -5.0, 5.0, 41)?;
    let records = sweep::run_grid(n_atoms, &deltas, &gammas, Method::Projected)?;

    println!("rows: Δ from 4 down to −2; columns: γ from −5 to 5");
    println!("N/S = north/south pole, digits = (λ + j) / 10 in the parallels\n");
    for (row, delta) in records.chunks(gammas.len()).zip(&deltas).rev() {
        let line: String = row
            .iter()
            .map(|r| {
                let params = ModelParams::new(n_atoms, r.delta, r.gamma).expect("grid point");
                match classify_region(&params) {
                    PhaseRegion::NorthPole => 'N',
                    PhaseRegion::SouthPole => 'S',
                    PhaseRegion::Parallels => {
                        let above = r.lambda_proj.unwrap() + params.j().value();
                        char::from_digit(((above / 10.0) as u32).min(9), 10).unwrap()
                    }
                }
            })
            .collect();
        println!("{delta:>6.2} {line}");
    }
    Ok(())
}
