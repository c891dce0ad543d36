//! Projected coherent state against exact diagonalization at one point.
//!
//! ```text
//! cargo run --example point_comparison -- 20 0.2 1.2
//! ```
//! Arguments: number of atoms, detuning Δ, coupling γ.

use tcm_lab::exact;
use tcm_lab::model::{classify_region, critical_point, ModelParams};
use tcm_lab::projected;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n_atoms: u32 = args.first().map_or(Ok(20), |s| s.parse())?;
    let delta: f64 = args.get(1).map_or(Ok(0.2), |s| s.parse())?;
    let gamma: f64 = args.get(2).map_or(Ok(1.2), |s| s.parse())?;
    let params = ModelParams::new(n_atoms, delta, gamma)?;

    let region = classify_region(&params);
    println!(
        "N = {n_atoms}, Δ = {delta}, γ = {gamma}, ω_A = {}: {region:?}",
        params.omega_a()
    );
    if let Ok(cp) = critical_point(&params) {
        println!(
            "semiclassical minimum: θ_c = {:.6}, λ_c = {:.6}, E_0/N = {:.8}",
            cp.theta_c, cp.lambda_c, cp.e0_per_particle
        );
    }

    let state = projected::projected_ground_state(&params)?;
    let proj = projected::observables(&params, state.lambda)?;
    let gs = exact::ground_state(&params)?;
    let exact_obs = exact::observables_from_state(&gs.state, &params)?;
    let fidelity = exact::fidelity(&state.to_sector_state(), &gs.state);

    println!("{:<14}{:>18}{:>18}", "", "projected", "exact");
    let rows = [
        ("λ", proj.lambda.value(), exact_obs.lambda.value()),
        ("E/N", proj.energy_per_particle, exact_obs.energy_per_particle),
        ("⟨n⟩", proj.n_mean, exact_obs.n_mean),
        ("(Δn)²", proj.n_var, exact_obs.n_var),
        ("⟨J_z⟩", proj.jz_mean, exact_obs.jz_mean),
        ("⟨a†J₋⟩", proj.adag_jminus, exact_obs.adag_jminus),
        ("ξ", proj.xi, exact_obs.xi),
        ("S_E", proj.entropy, exact_obs.entropy),
    ];
    for (name, p, e) in rows {
        println!("{name:<14}{p:>18.10}{e:>18.10}");
    }
    println!("fidelity |⟨proj|exact⟩|² = {fidelity:.10}");
    Ok(())
}
