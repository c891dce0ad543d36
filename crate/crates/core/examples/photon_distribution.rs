//! Photon-number distribution of the projected state next to the exact one.
//!
//! ```text
//! cargo run --example photon_distribution -- 1.5
//! ```
//! The argument is the coupling γ at N = 20, Δ = 0.2.

use tcm_lab::exact;
use tcm_lab::model::ModelParams;
use tcm_lab::projected;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let gamma: f64 = std::env::args().nth(1).map_or(Ok(1.5), |s| s.parse())?;
    let params = ModelParams::new(20, 0.2, gamma)?;
    let lambda = projected::select_lambda(&params)?;
    let proj = projected::photon_distribution(&params, lambda)?;
    let gs = exact::ground_state(&params)?;
    let exact_probs = gs.state.probabilities();

    println!("projected λ = {lambda}, exact λ = {}", gs.lambda);
    println!("{:>4}{:>14}{:>14}", "ν", "projected", "exact");
    let nu_max = proj.basis.nu_max.max(gs.state.basis.nu_max);
    for nu in 0..=nu_max {
        let exact_p = gs.state.basis.offset_of(nu).map_or(0.0, |k| exact_probs[k]);
        let p = proj.get(nu);
        if p > 1e-6 || exact_p > 1e-6 {
            let bar = "#".repeat((p * 60.0).round() as usize);
            println!("{nu:>4}{p:>14.6}{exact_p:>14.6}  {bar}");
        }
    }
    println!(
        "⟨n⟩: {:.6} (closed form) vs {:.6} (exact)",
        projected::mean_photon(&params, lambda)?,
        exact::observables_from_state(&gs.state, &params)?.n_mean
    );
    Ok(())
}
