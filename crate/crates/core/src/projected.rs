//! The projected coherent state and its closed-form observables.
//!
//! In the Parallels region the spin ⊗ field coherent state that minimizes
//! the semiclassical energy is projected onto one eigenvalue λ of Λ, which
//! leaves (unnormalized, φ = 0)
//!
//! ```text
//! |ζ} = Σ_ν C(2j, j+λ−ν)^{1/2} ζ^ν / √ν! |ν⟩ ⊗ |j, λ−ν⟩.
//! ```
//!
//! Its norm `Y = {ζ|ζ}` is a truncated confluent series, i.e. an associated
//! Laguerre polynomial at `−η` with `η = ζ²`, and every moment of the photon
//! number follows from ratios of neighbouring Laguerre polynomials.
//!
//! In the pole regions the state is `|0⟩ ⊗ |j, ∓j⟩` and all functions below
//! evaluate that state whatever λ is passed (the `Y = 1` convention).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{
    self, classify_region, critical_point, sector_basis, Lambda, ModelError, ModelParams, PhaseRegion, SectorBasis,
};
use crate::specfun::{laguerre_neg, laguerre_neg_index_moments, log_binomial, log_factorial, LogValue, SpecfunError};
use crate::state::{shannon_entropy, SectorState};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProjectedError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
    #[error("projection onto lambda = {0} vanishes (zeta = 0 and no zero-photon state in the sector)")]
    EmptyProjection(Lambda),
}

/// How `⟨J_x²⟩` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum JxSquared {
    /// `½[j(j+1) − ⟨J_z²⟩]`, exact for any state with a definite λ.
    #[default]
    SectorIdentity,
    /// `½ j(j+1) − ½ (λ − ⟨n̂⟩)²`, which drops the `(ΔJ_z)²/2` term.
    MeanOnly,
}

/// Scalar ground-state observables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObservableSet {
    pub energy_per_particle: f64,
    pub n_mean: f64,
    pub n_var: f64,
    pub jz_mean: f64,
    pub jz_var: f64,
    pub jx2: f64,
    pub q2: f64,
    pub adag_jminus: f64,
    pub xi: f64,
    pub entropy: f64,
    pub lambda: Lambda,
    pub region: PhaseRegion,
}

impl ObservableSet {
    /// Assembles the set from the photon-number moments; the matter and
    /// quadrature entries follow from λ conservation.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_moments(
        params: &ModelParams,
        lambda: Lambda,
        region: PhaseRegion,
        energy_per_particle: f64,
        n_mean: f64,
        n_var: f64,
        adag_jminus: f64,
        entropy: f64,
        convention: JxSquared,
    ) -> Self {
        let j = params.j().value();
        let jz_mean = lambda.value() - n_mean;
        let jz_var = n_var;
        let jx2 = match convention {
            JxSquared::SectorIdentity => 0.5 * (j * (j + 1.0) - (jz_var + jz_mean * jz_mean)),
            JxSquared::MeanOnly => 0.5 * j * (j + 1.0) - 0.5 * jz_mean * jz_mean,
        };
        ObservableSet {
            energy_per_particle,
            n_mean,
            n_var,
            jz_mean,
            jz_var,
            jx2,
            q2: n_mean + 0.5,
            adag_jminus,
            xi: (2.0 * jx2.max(0.0) / j).sqrt(),
            entropy,
            lambda,
            region,
        }
    }
}

/// Normalized projected state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectedState {
    pub params: ModelParams,
    pub region: PhaseRegion,
    pub lambda: Lambda,
    /// ζ, or 0 in the pole regions.
    pub zeta: f64,
    pub phi: f64,
    pub basis: SectorBasis,
    pub coefficients: Vec<f64>,
    /// `ln Y`; 0 in the pole regions.
    pub log_overlap: f64,
}

impl ProjectedState {
    pub fn to_sector_state(&self) -> SectorState {
        SectorState::new(self.basis, self.coefficients.clone())
    }
}

/// Photon-number distribution over one sector.
#[derive(Debug, Clone, PartialEq)]
pub struct PhotonDistribution {
    pub basis: SectorBasis,
    pub probabilities: Vec<f64>,
}

impl PhotonDistribution {
    pub fn get(&self, nu: u64) -> f64 {
        self.basis.offset_of(nu).map_or(0.0, |k| self.probabilities[k])
    }
}

/// Distribution of the number of excited atoms `n_e = λ + j − ν`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExcitationDistribution {
    /// Smallest `n_e` with support.
    pub n_e_min: u64,
    /// `probabilities[i]` is the weight of `n_e = n_e_min + i`.
    pub probabilities: Vec<f64>,
}

impl ExcitationDistribution {
    pub fn get(&self, n_e: u64) -> f64 {
        n_e.checked_sub(self.n_e_min)
            .and_then(|i| self.probabilities.get(i as usize).copied())
            .unwrap_or(0.0)
    }
}

fn pole_lambda(params: &ModelParams, region: PhaseRegion) -> Lambda {
    match region {
        PhaseRegion::SouthPole => params.j(),
        _ => params.lambda_min(),
    }
}

/// Region plus the λ actually evaluated (the pole λ outside Parallels).
fn effective_lambda(params: &ModelParams, lambda: Lambda) -> (PhaseRegion, Lambda) {
    let region = classify_region(params);
    if region.is_pole() {
        (region, pole_lambda(params, region))
    } else {
        (region, lambda)
    }
}

/// Laguerre polynomials `L_{n}, L_{n-1}` at `−η` for the branch of λ.
struct LaguerrePair {
    l0: LogValue,
    l1: LogValue,
}

impl LaguerrePair {
    fn r1(&self) -> f64 {
        self.l1.ratio(self.l0)
    }
}

/// `true` for the branch `λ ≥ j`, where the photon number is bounded below.
fn upper_branch(params: &ModelParams, lambda: Lambda) -> bool {
    lambda > params.j()
}

/// `(n, α)` of the leading Laguerre polynomial `L_n^α(−η)` for the branch of λ.
fn laguerre_indices(params: &ModelParams, lambda: Lambda, eta: f64) -> Result<(i64, i64), ProjectedError> {
    let two_j = params.two_j() as i64;
    let lpj = lambda.units_above(params.lambda_min()).expect("parity checked");
    if upper_branch(params, lambda) {
        if eta == 0.0 {
            return Err(ProjectedError::EmptyProjection(lambda));
        }
        Ok((two_j, lpj - two_j))
    } else {
        Ok((lpj, two_j - lpj))
    }
}

fn laguerre_pair(params: &ModelParams, lambda: Lambda, eta: f64) -> Result<LaguerrePair, ProjectedError> {
    let (n, alpha) = laguerre_indices(params, lambda, eta)?;
    Ok(LaguerrePair {
        l0: laguerre_neg(n, alpha, eta)?,
        l1: laguerre_neg(n - 1, alpha, eta)?,
    })
}

/// `ln Y` for the unnormalized projected state `|ζ}` in sector λ.
///
/// Only needs ζ to exist (γ ≠ 0); the region is not consulted.
pub fn log_overlap_y(params: &ModelParams, lambda: Lambda) -> Result<f64, ProjectedError> {
    let basis = sector_basis(params, lambda)?;
    let eta = model::eta(params)?;
    let two_j = params.two_j();
    let lpj = basis.nu_max;
    if upper_branch(params, lambda) {
        let excess = lpj - two_j;
        let lag = laguerre_neg(two_j as i64, excess as i64, eta)?;
        let power = if eta == 0.0 {
            f64::NEG_INFINITY
        } else {
            excess as f64 * eta.ln()
        };
        Ok(log_factorial(two_j) - log_factorial(lpj) + power + lag.ln())
    } else {
        Ok(laguerre_neg(lpj as i64, two_j as i64 - lpj as i64, eta)?.ln())
    }
}

/// `P_ν = η^ν / ν! · C(2j, j+λ−ν) / Y`.
pub fn photon_distribution(params: &ModelParams, lambda: Lambda) -> Result<PhotonDistribution, ProjectedError> {
    let (region, lambda) = effective_lambda(params, lambda);
    let basis = sector_basis(params, lambda)?;
    if region.is_pole() {
        let mut probabilities = vec![0.0; basis.dimension()];
        probabilities[0] = 1.0;
        return Ok(PhotonDistribution { basis, probabilities });
    }
    let log_weights = log_photon_weights(params, &basis)?;
    let log_y = log_overlap_y(params, lambda)?;
    if log_y == f64::NEG_INFINITY {
        return Err(ProjectedError::EmptyProjection(lambda));
    }
    let probabilities = log_weights.iter().map(|w| (w - log_y).exp()).collect();
    Ok(PhotonDistribution { basis, probabilities })
}

fn log_photon_weights(params: &ModelParams, basis: &SectorBasis) -> Result<Vec<f64>, ProjectedError> {
    let eta = model::eta(params)?;
    let ln_eta = eta.ln();
    let two_j = params.two_j();
    let lpj = basis.nu_max as i64;
    Ok(basis
        .nus()
        .map(|nu| {
            let power = if nu == 0 { 0.0 } else { nu as f64 * ln_eta };
            log_binomial(two_j, lpj - nu as i64) + power - log_factorial(nu)
        })
        .collect())
}

/// Reindexes the photon distribution by `n_e = λ + j − ν`.
pub fn excited_atom_distribution(
    params: &ModelParams,
    lambda: Lambda,
) -> Result<ExcitationDistribution, ProjectedError> {
    let photons = photon_distribution(params, lambda)?;
    let lpj = photons.basis.nu_max;
    let n_e_min = lpj - photons.basis.nu_max;
    let probabilities = photons.probabilities.iter().rev().copied().collect();
    Ok(ExcitationDistribution { n_e_min, probabilities })
}

/// `⟨n̂⟩` from the closed Laguerre-ratio form.
pub fn mean_photon(params: &ModelParams, lambda: Lambda) -> Result<f64, ProjectedError> {
    let (region, lambda) = effective_lambda(params, lambda);
    sector_basis(params, lambda)?;
    if region.is_pole() || lambda == params.lambda_min() {
        return Ok(0.0);
    }
    let eta = model::eta(params)?;
    let lag = laguerre_pair(params, lambda, eta)?;
    if lag.l0.is_zero() {
        return Err(ProjectedError::EmptyProjection(lambda));
    }
    let lpj = lambda.units_above(params.lambda_min()).unwrap() as f64;
    let two_j = params.two_j() as f64;
    Ok(if upper_branch(params, lambda) {
        lpj * (1.0 - lag.r1())
    } else {
        lpj - two_j * lag.r1()
    })
}

/// `(Δn̂)²` from the closed three-ratio form `a(R1 + (a−1)R2 − aR1²)`.
///
/// `a` is `2j` below `λ = j` and `λ + j` above; in both branches it equals
/// `n + α` of the Laguerre polynomials involved, so the combination is
/// evaluated as the centered index variance of
/// [`laguerre_neg_index_moments`], free of cancellation.
pub fn photon_variance(params: &ModelParams, lambda: Lambda) -> Result<f64, ProjectedError> {
    let (region, lambda) = effective_lambda(params, lambda);
    sector_basis(params, lambda)?;
    if region.is_pole() || lambda == params.lambda_min() {
        return Ok(0.0);
    }
    let eta = model::eta(params)?;
    let (n, alpha) = laguerre_indices(params, lambda, eta)?;
    Ok(laguerre_neg_index_moments(n as u64, alpha, eta)?.variance.max(0.0))
}

/// Energy per particle `⟨H⟩` of the projected state in sector λ.
pub fn energy_surface(params: &ModelParams, lambda: Lambda) -> Result<f64, ProjectedError> {
    let (region, lambda) = effective_lambda(params, lambda);
    sector_basis(params, lambda)?;
    match region {
        PhaseRegion::NorthPole => return Ok(-params.omega_a() / 2.0),
        PhaseRegion::SouthPole => return Ok(params.omega_a() / 2.0),
        PhaseRegion::Parallels => {}
    }
    let delta = params.detuning();
    if lambda == params.lambda_min() {
        return Ok(-(1.0 - delta) / 2.0);
    }
    let zeta = model::zeta(params)?;
    let lag = laguerre_pair(params, lambda, zeta * zeta)?;
    if lag.l0.is_zero() {
        return Err(ProjectedError::EmptyProjection(lambda));
    }
    let j = params.j().value();
    let lam = lambda.value();
    let ratio = if upper_branch(params, lambda) {
        (lam + j) / (2.0 * j) * lag.r1()
    } else {
        lag.r1()
    };
    let gamma = params.coupling();
    Ok((lam + j * delta) / (2.0 * j) - (delta - 2.0 * gamma / (2.0 * j).sqrt() * zeta) * ratio)
}

/// All closed-form observables of the projected state in sector λ.
pub fn observables(params: &ModelParams, lambda: Lambda) -> Result<ObservableSet, ProjectedError> {
    observables_with(params, lambda, JxSquared::default())
}

pub fn observables_with(
    params: &ModelParams,
    lambda: Lambda,
    convention: JxSquared,
) -> Result<ObservableSet, ProjectedError> {
    let (region, lambda) = effective_lambda(params, lambda);
    let n_mean = mean_photon(params, lambda)?;
    let n_var = photon_variance(params, lambda)?;
    let energy = energy_surface(params, lambda)?;
    let entropy = shannon_entropy(&photon_distribution(params, lambda)?.probabilities);
    let adag_jminus = if region.is_pole() {
        0.0
    } else {
        let j = params.j().value();
        model::zeta(params)? * (j + lambda.value() - n_mean)
    };
    Ok(ObservableSet::from_moments(
        params,
        lambda,
        region,
        energy,
        n_mean,
        n_var,
        adag_jminus,
        entropy,
        convention,
    ))
}

/// λ onto which the coherent state is projected.
///
/// Poles give `∓j`. In Parallels every λ of the right parity within one unit
/// of the semiclassical `λ_c` is tried and the lowest projected energy wins,
/// ties going to the smaller λ.
pub fn select_lambda(params: &ModelParams) -> Result<Lambda, ProjectedError> {
    let region = classify_region(params);
    if region.is_pole() {
        return Ok(pole_lambda(params, region));
    }
    let lambda_c = critical_point(params)?.lambda_c;
    let mut best: Option<(f64, Lambda)> = None;
    for lambda in candidate_lambdas(params, lambda_c) {
        let energy = match energy_surface(params, lambda) {
            Ok(e) => e,
            Err(ProjectedError::EmptyProjection(_)) => continue,
            Err(e) => return Err(e),
        };
        if best.is_none_or(|(e, _)| energy < e) {
            best = Some((energy, lambda));
        }
    }
    Ok(best.map_or(params.lambda_min(), |(_, l)| l))
}

/// Parity-correct λ in `[λ_c − 1, λ_c + 1]`, clipped at `−j`, ascending.
pub fn candidate_lambdas(params: &ModelParams, lambda_c: f64) -> Vec<Lambda> {
    const SLACK: f64 = 1e-9;
    let lambda_min = params.lambda_min();
    // whole units above −j
    let lo = (lambda_c - 1.0 - lambda_min.value() - SLACK).ceil().max(0.0) as i64;
    let hi = (lambda_c + 1.0 - lambda_min.value() + SLACK).floor() as i64;
    (lo..=hi).map(|k| lambda_min.shift(k)).collect()
}

/// Normalized projected state in sector λ.
pub fn build_state(params: &ModelParams, lambda: Lambda) -> Result<ProjectedState, ProjectedError> {
    let (region, lambda) = effective_lambda(params, lambda);
    let basis = sector_basis(params, lambda)?;
    if region.is_pole() {
        let mut coefficients = vec![0.0; basis.dimension()];
        coefficients[0] = 1.0;
        return Ok(ProjectedState {
            params: *params,
            region,
            lambda,
            zeta: 0.0,
            phi: 0.0,
            basis,
            coefficients,
            log_overlap: 0.0,
        });
    }
    let zeta = model::zeta(params)?;
    let log_y = log_overlap_y(params, lambda)?;
    if log_y == f64::NEG_INFINITY {
        return Err(ProjectedError::EmptyProjection(lambda));
    }
    let coefficients = log_photon_weights(params, &basis)?
        .iter()
        .zip(basis.nus())
        .map(|(w, nu)| {
            let magnitude = (0.5 * (w - log_y)).exp();
            if zeta < 0.0 && nu % 2 == 1 {
                -magnitude
            } else {
                magnitude
            }
        })
        .collect();
    Ok(ProjectedState {
        params: *params,
        region,
        lambda,
        zeta,
        phi: 0.0,
        basis,
        coefficients,
        log_overlap: log_y,
    })
}

/// Selects λ and builds the state there.
pub fn projected_ground_state(params: &ModelParams) -> Result<ProjectedState, ProjectedError> {
    build_state(params, select_lambda(params)?)
}
