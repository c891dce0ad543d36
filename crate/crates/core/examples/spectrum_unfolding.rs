//! Lowest levels at Δ = 1 as the coupling is switched on.
//!
//! ```text
//! cargo run --release --example spectrum_unfolding
//! ```
//! At γ = 0 every level ν/N is (2j+1)-fold degenerate; any small coupling
//! splits the multiplets.

use tcm_lab::exact::{self, Level};
use tcm_lab::model::ModelParams;

fn distinct(levels: &[Level]) -> usize {
    let mut energies: Vec<f64> = levels.iter().map(|l| l.energy).collect();
    energies.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    energies.len()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k = 40;
    for gamma in [0.0, 0.1, 0.2, 0.3] {
        let params = ModelParams::new(20, 1.0, gamma)?;
        let levels = exact::spectrum(&params, k)?;
        let head: Vec<String> = levels
            .iter()
            .take(8)
            .map(|l| format!("{:.4}({})", l.energy, l.lambda))
            .collect();
        println!(
            "γ = {gamma:.1}: {} distinct among {k}; lowest: {}",
            distinct(&levels),
            head.join(" ")
        );
    }
    Ok(())
}
