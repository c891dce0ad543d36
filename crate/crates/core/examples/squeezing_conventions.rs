//! Squeezing parameter ξ with the two ⟨J_x²⟩ conventions.
//!
//! ```text
//! cargo run --example squeezing_conventions
//! ```
//! `SectorIdentity` uses ⟨J_x²⟩ = ½[j(j+1) − ⟨J_z²⟩], exact at fixed λ;
//! `MeanOnly` drops the (ΔJ_z)² term and so overstates ξ whenever the
//! photon number fluctuates.

use tcm_lab::exact;
use tcm_lab::model::ModelParams;
use tcm_lab::projected::{self, JxSquared};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>6}{:>6}{:>12}{:>12}{:>12}", "γ", "λ", "identity", "literal", "exact");
    for step in 0..=10 {
        let gamma = 0.2 * step as f64;
        let params = ModelParams::new(20, 0.2, gamma)?;
        let lambda = projected::select_lambda(&params)?;
        let identity = projected::observables_with(&params, lambda, JxSquared::SectorIdentity)?;
        let literal = projected::observables_with(&params, lambda, JxSquared::MeanOnly)?;
        let gs = exact::ground_state(&params)?;
        let exact_xi = exact::observables_from_state(&gs.state, &params)?.xi;
        println!(
            "{gamma:>6.1}{:>6}{:>12.6}{:>12.6}{exact_xi:>12.6}",
            lambda.to_string(),
            identity.xi,
            literal.xi
        );
    }
    Ok(())
}
