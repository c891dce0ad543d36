//! Exact ground state by diagonalization inside each Λ sector.
//!
//! Within the sector of eigenvalue λ the Hamiltonian couples only
//! neighbouring photon numbers, so each block is a real symmetric
//! tridiagonal matrix of dimension at most `2j + 1`.

pub mod tridiag;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{classify_region, critical_point, sector_basis, Lambda, ModelError, ModelParams, SectorBasis};
use crate::projected::{JxSquared, ObservableSet};
use crate::state::{shannon_entropy, SectorState};

pub use tridiag::{SymTridiagonal, TridiagError};

/// Sectors added to the scan window at a time.
pub const WINDOW_STEP: i64 = 10;
/// Upper bound on window growth before giving up.
pub const MAX_WINDOW_EXTENSIONS: usize = 1000;
/// Largest admissible deviation of `Σ c²` from one.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExactError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Solver(#[from] TridiagError),
    #[error("sector scan did not close: minimum still at the window edge lambda = {edge}")]
    WindowExhausted { edge: Lambda },
    #[error("state is not normalized: sum of squares = {0}")]
    NotNormalized(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectorHamiltonian {
    pub basis: SectorBasis,
    pub diagonal: Vec<f64>,
    pub offdiagonal: Vec<f64>,
}

impl SectorHamiltonian {
    pub fn matrix(&self) -> SymTridiagonal<'_> {
        SymTridiagonal {
            diagonal: &self.diagonal,
            offdiagonal: &self.offdiagonal,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantumGroundState {
    pub lambda: Lambda,
    pub energy_per_particle: f64,
    pub state: SectorState,
}

impl QuantumGroundState {
    pub fn coefficients(&self) -> &[f64] {
        &self.state.coefficients
    }
}

/// Matrix of `H` in the basis `|ν⟩ ⊗ |j, λ−ν⟩`.
///
/// `⟨ν, m|H|ν, m⟩ = [λ − Δ m]/N` and
/// `⟨ν+1, m−1|H|ν, m⟩ = γ/(N√N) √(ν+1) √(j(j+1) − m(m−1))`.
pub fn build_sector_hamiltonian(params: &ModelParams, lambda: Lambda) -> Result<SectorHamiltonian, ExactError> {
    let basis = sector_basis(params, lambda)?;
    let n = params.n();
    let lam = lambda.value();
    let delta = params.detuning();
    let coupling = params.coupling() / (n * n.sqrt());
    let dim = basis.dimension();
    let diagonal = (0..dim)
        .map(|k| {
            let m = basis.twice_m(k) as f64 / 2.0;
            (lam - delta * m) / n
        })
        .collect();
    let offdiagonal = (0..dim.saturating_sub(1))
        .map(|k| coupling * ((basis.nu(k) + 1) as f64).sqrt() * basis.lowering_weight(k).sqrt())
        .collect();
    Ok(SectorHamiltonian {
        basis,
        diagonal,
        offdiagonal,
    })
}

/// Smallest eigenvalue and unit eigenvector of one sector block.
pub fn lowest_eigenpair(h: &SectorHamiltonian) -> Result<(f64, Vec<f64>), ExactError> {
    let t = SymTridiagonal::new(&h.diagonal, &h.offdiagonal)?;
    Ok(t.lowest()?)
}

/// Initial upper end of the λ scan.
fn initial_window_top(params: &ModelParams) -> Lambda {
    let lambda_min = params.lambda_min();
    let lambda_c = critical_point(params).map_or(lambda_min.value(), |cp| cp.lambda_c);
    let units = ((lambda_c.ceil() - lambda_min.value()).ceil() as i64 + WINDOW_STEP).max(WINDOW_STEP);
    lambda_min.shift(units)
}

fn sector_minimum(params: &ModelParams, lambda: Lambda) -> Result<f64, ExactError> {
    let h = build_sector_hamiltonian(params, lambda)?;
    Ok(SymTridiagonal::new(&h.diagonal, &h.offdiagonal)?.eigenvalue(0))
}

/// Global ground state over all Λ sectors.
///
/// Sectors from `−j` up to about `λ_c + 10` are diagonalized; the window is
/// extended while the per-sector minimum still sits at its upper edge. Ties
/// go to the smaller λ.
pub fn ground_state(params: &ModelParams) -> Result<QuantumGroundState, ExactError> {
    let lambda_min = params.lambda_min();
    let mut top = initial_window_top(params);
    let mut best = (sector_minimum(params, lambda_min)?, lambda_min);
    let mut next = lambda_min.shift(1);
    let mut extensions = 0;
    loop {
        while next <= top {
            let e = sector_minimum(params, next)?;
            if e < best.0 {
                best = (e, next);
            }
            next = next.shift(1);
        }
        if best.1 < top {
            break;
        }
        extensions += 1;
        if extensions > MAX_WINDOW_EXTENSIONS {
            return Err(ExactError::WindowExhausted { edge: top });
        }
        top = top.shift(WINDOW_STEP);
    }
    let h = build_sector_hamiltonian(params, best.1)?;
    let (energy, coefficients) = lowest_eigenpair(&h)?;
    Ok(QuantumGroundState {
        lambda: best.1,
        energy_per_particle: energy,
        state: SectorState::new(h.basis, coefficients),
    })
}

fn check_normalized(state: &SectorState) -> Result<(), ExactError> {
    let norm = state.norm_sqr();
    if (norm - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(ExactError::NotNormalized(norm));
    }
    Ok(())
}

/// Observables of any normalized sector state by direct moments of `c_ν`.
pub fn observables_from_state(state: &SectorState, params: &ModelParams) -> Result<ObservableSet, ExactError> {
    observables_from_state_with(state, params, JxSquared::default())
}

pub fn observables_from_state_with(
    state: &SectorState,
    params: &ModelParams,
    convention: JxSquared,
) -> Result<ObservableSet, ExactError> {
    check_normalized(state)?;
    let h = build_sector_hamiltonian(params, state.lambda())?;
    let energy = h.matrix().quadratic_form(&state.coefficients);

    let probabilities = state.probabilities();
    let (mut first, mut second) = (0.0, 0.0);
    for (nu, p) in state.basis.nus().zip(&probabilities) {
        first += nu as f64 * p;
        second += (nu as f64).powi(2) * p;
    }
    let n_var = (second - first * first).max(0.0);

    let c = &state.coefficients;
    let adag_jminus: f64 = (0..c.len().saturating_sub(1))
        .map(|k| {
            let amplitude = ((state.basis.nu(k) + 1) as f64).sqrt() * state.basis.lowering_weight(k).sqrt();
            c[k + 1] * c[k] * amplitude
        })
        .sum();

    Ok(ObservableSet::from_moments(
        params,
        state.lambda(),
        classify_region(params),
        energy,
        first,
        n_var,
        adag_jminus,
        shannon_entropy(&probabilities),
        convention,
    ))
}

/// Field–matter entanglement entropy `−Σ |c_ν|² ln |c_ν|²`.
///
/// Both reduced density matrices are diagonal in the sector basis with the
/// same nonzero spectrum.
pub fn entanglement_entropy(state: &SectorState) -> Result<f64, ExactError> {
    check_normalized(state)?;
    Ok(shannon_entropy(&state.probabilities()))
}

/// `|⟨a|b⟩|²`; states in different Λ sectors are orthogonal.
pub fn fidelity(a: &SectorState, b: &SectorState) -> f64 {
    if a.lambda() != b.lambda() {
        return 0.0;
    }
    let overlap: f64 = a
        .amplitudes()
        .filter_map(|(nu, ca)| b.basis.offset_of(nu).map(|k| ca * b.coefficients[k]))
        .sum();
    (overlap * overlap).min(1.0)
}

/// One level of the spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub energy: f64,
    pub lambda: Lambda,
}

/// The `k` lowest eigenvalues over all sectors, ascending.
///
/// The scan starts from the ground-state window and keeps adding sectors
/// while the lowest level of the edge sector is still below the current
/// `k`-th level.
pub fn spectrum(params: &ModelParams, k: usize) -> Result<Vec<Level>, ExactError> {
    if k == 0 {
        return Ok(Vec::new());
    }
    let mut top = initial_window_top(params);
    let mut levels: Vec<Level> = Vec::new();
    let mut next = params.lambda_min();
    let mut extensions = 0;
    loop {
        let mut edge_min = f64::INFINITY;
        while next <= top {
            let h = build_sector_hamiltonian(params, next)?;
            let t = SymTridiagonal::new(&h.diagonal, &h.offdiagonal)?;
            let values = t.eigenvalues();
            edge_min = values[0];
            levels.extend(values.into_iter().map(|energy| Level { energy, lambda: next }));
            next = next.shift(1);
        }
        sort_levels(&mut levels);
        let enough = levels.len() >= k && edge_min > levels[k - 1].energy;
        if enough {
            break;
        }
        extensions += 1;
        if extensions > MAX_WINDOW_EXTENSIONS {
            return Err(ExactError::WindowExhausted { edge: top });
        }
        top = top.shift(WINDOW_STEP);
    }
    levels.truncate(k);
    Ok(levels)
}

fn sort_levels(levels: &mut [Level]) {
    levels.sort_by(|a, b| a.energy.total_cmp(&b.energy).then(a.lambda.cmp(&b.lambda)));
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32, delta: f64, gamma: f64) -> ModelParams {
        ModelParams::new(n, delta, gamma).unwrap()
    }

    #[test]
    fn single_atom_block() {
        let (delta, gamma) = (0.3, 0.7);
        let m = p(1, delta, gamma);
        let h = build_sector_hamiltonian(&m, Lambda::from_twice(1)).unwrap();
        assert_eq!(h.diagonal, vec![0.5 - delta / 2.0, 0.5 + delta / 2.0]);
        assert!((h.offdiagonal[0] - gamma).abs() < 1e-15);
        let (e, v) = lowest_eigenpair(&h).unwrap();
        let expected = 0.5 - (delta * delta / 4.0 + gamma * gamma).sqrt();
        assert!((e - expected).abs() < 1e-14);
        assert!(h.matrix().residual(e, &v) < 1e-12);
    }

    #[test]
    fn lowest_sector_is_one_dimensional() {
        let m = p(20, 0.2, 0.8);
        let h = build_sector_hamiltonian(&m, m.lambda_min()).unwrap();
        assert_eq!(h.diagonal.len(), 1);
        assert!((h.diagonal[0] + 0.4).abs() < 1e-15);
        let (e, v) = lowest_eigenpair(&h).unwrap();
        assert!((e + 0.4).abs() < 1e-15);
        assert_eq!(v, vec![1.0]);
    }

    #[test]
    fn zero_coupling_picks_diagonal_minimum() {
        let m = p(4, 0.5, 0.0);
        let h = build_sector_hamiltonian(&m, Lambda::from_int(1)).unwrap();
        let (e, v) = lowest_eigenpair(&h).unwrap();
        let min = h.diagonal.iter().copied().fold(f64::INFINITY, f64::min);
        assert_eq!(e, min);
        assert_eq!(v.iter().filter(|&&x| x == 1.0).count(), 1);
        assert_eq!(v.iter().filter(|&&x| x == 0.0).count(), v.len() - 1);
    }

    #[test]
    fn north_pole_ground_state() {
        let g = ground_state(&p(20, 0.2, 0.5)).unwrap();
        assert_eq!(g.lambda, Lambda::from_int(-10));
        assert!((g.energy_per_particle + 0.4).abs() < 1e-14);
    }

    #[test]
    fn single_atom_ground_sector_switches_at_unit_coupling() {
        let below = ground_state(&p(1, 0.0, 0.9)).unwrap();
        assert_eq!(below.lambda, Lambda::from_twice(-1));
        assert!((below.energy_per_particle + 0.5).abs() < 1e-14);
        let above = ground_state(&p(1, 0.0, 1.1)).unwrap();
        assert_eq!(above.lambda, Lambda::from_twice(1));
        assert!((above.energy_per_particle - (0.5 - 1.1)).abs() < 1e-14);
    }

    #[test]
    fn large_lambda_window_grows() {
        // λ_c ≈ 122 at Δ = −2, γ = 5
        let g = ground_state(&p(20, -2.0, 5.0)).unwrap();
        assert!(g.lambda.value() > 100.0);
        let above = sector_minimum(&p(20, -2.0, 5.0), g.lambda.shift(1)).unwrap();
        assert!(above >= g.energy_per_particle);
    }

    #[test]
    fn fidelity_rules() {
        let m = p(6, 0.2, 1.3);
        let g = ground_state(&m).unwrap();
        assert!((fidelity(&g.state, &g.state) - 1.0).abs() < 1e-14);
        let other = ground_state(&m.with_coupling(0.1).unwrap()).unwrap();
        assert_ne!(other.lambda, g.lambda);
        assert_eq!(fidelity(&g.state, &other.state), 0.0);
    }

    #[test]
    fn entropy_limits() {
        let m = p(4, 0.2, 1.0);
        let basis = sector_basis(&m, Lambda::from_int(0)).unwrap();
        let d = basis.dimension();
        let uniform = SectorState::new(basis, vec![1.0 / (d as f64).sqrt(); d]);
        assert!((entanglement_entropy(&uniform).unwrap() - (d as f64).ln()).abs() < 1e-14);
        let mut delta = vec![0.0; d];
        delta[0] = 1.0;
        assert_eq!(entanglement_entropy(&SectorState::new(basis, delta)).unwrap(), 0.0);
        let bad = SectorState::new(basis, vec![1.0; d]);
        assert!(matches!(entanglement_entropy(&bad), Err(ExactError::NotNormalized(_))));
    }

    #[test]
    fn observables_of_exact_state() {
        let m = p(20, 0.2, 1.4);
        let g = ground_state(&m).unwrap();
        let o = observables_from_state(&g.state, &m).unwrap();
        assert!((o.energy_per_particle - g.energy_per_particle).abs() < 1e-12);
        assert_eq!(o.jz_var, o.n_var);
        assert_eq!(o.q2, o.n_mean + 0.5);
        assert_eq!(o.jz_mean, g.lambda.value() - o.n_mean);
        // energy from the term-by-term assembly of H
        let n = m.n();
        let assembled =
            (g.lambda.value() - m.detuning() * o.jz_mean + 2.0 * m.coupling() / n.sqrt() * o.adag_jminus) / n;
        assert!((assembled - o.energy_per_particle).abs() < 1e-12);
    }

    #[test]
    fn resonant_spectrum_at_zero_coupling() {
        // Δ = 0: H = Λ/N, every state of sector λ sits at λ/N
        let levels = spectrum(&p(20, 0.0, 0.0), 6).unwrap();
        let energies: Vec<f64> = levels.iter().map(|l| l.energy).collect();
        assert_eq!(energies, vec![-0.5, -0.45, -0.45, -0.4, -0.4, -0.4]);
    }

    #[test]
    fn atomic_degeneracy_at_unit_detuning() {
        // Δ = 1: H = a†a/N, level ν/N is (2j+1)-fold degenerate
        let levels = spectrum(&p(20, 1.0, 0.0), 25).unwrap();
        assert!(levels[..21].iter().all(|l| l.energy == 0.0));
        assert!(levels[21..].iter().all(|l| (l.energy - 0.05).abs() < 1e-15));
        let lambdas: Vec<i64> = levels[..21].iter().map(|l| l.lambda.twice() / 2).collect();
        assert_eq!(lambdas, (-10..=10).collect::<Vec<_>>());
    }

    #[test]
    fn spectrum_bottom_is_ground_state() {
        let m = p(8, 0.2, 1.2);
        let levels = spectrum(&m, 1).unwrap();
        let g = ground_state(&m).unwrap();
        assert_eq!(levels[0].lambda, g.lambda);
        assert!((levels[0].energy - g.energy_per_particle).abs() < 1e-14);
    }
}
