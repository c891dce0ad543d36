//! A single atom: the λ = 1/2 sector is the Jaynes-Cummings doublet
//! E± = 1/2 ± √(Δ²/4 + γ²).
//!
//! ```text
//! cargo run --example dressed_states
//! ```

use tcm_lab::exact;
use tcm_lab::model::{Lambda, ModelParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!(
        "{:>6}{:>6}{:>14}{:>14}{:>14}{:>14}",
        "Δ", "γ", "E−", "closed", "E+", "closed"
    );
    for (delta, gamma) in [(0.0, 0.5), (0.2, 0.3), (-1.0, 1.0), (1.5, 0.1)] {
        let params = ModelParams::new(1, delta, gamma)?;
        let h = exact::build_sector_hamiltonian(&params, Lambda::from_twice(1))?;
        let levels = h.matrix().eigenvalues();
        let split = (delta * delta / 4.0 + gamma * gamma).sqrt();
        println!(
            "{delta:>6.2}{gamma:>6.2}{:>14.10}{:>14.10}{:>14.10}{:>14.10}",
            levels[0],
            0.5 - split,
            levels[1],
            0.5 + split
        );
    }
    Ok(())
}
