//! Fidelity between the projected and exact ground states across the
//! south-pole boundary Δ = 1 + γ².
//!
//! ```text
//! cargo run --release --example fidelity_scan -- 0.75
//! ```
//! Points where the two states sit in different Λ sectors have zero
//! overlap and are flagged.

use tcm_lab::sweep::{self, Method};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let gamma: f64 = std::env::args().nth(1).map_or(Ok(0.75), |s| s.parse())?;
    let deltas = sweep::linspace("delta", 1.0, 2.0, 41)?;
    let records = sweep::run_grid(20, &deltas, &[gamma], Method::Both)?;
    println!("boundary at Δ = {:.4}", 1.0 + gamma * gamma);
    println!("{:>8}{:>8}{:>8}{:>12}", "Δ", "λ_proj", "λ_exact", "F");
    for r in &records {
        let (lp, le) = (r.lambda_proj.unwrap(), r.lambda_exact.unwrap());
        let flag = if lp != le { "  different sectors" } else { "" };
        println!("{:>8.4}{lp:>8}{le:>8}{:>12.6}{flag}", r.delta, r.fidelity.unwrap());
    }
    Ok(())
}
