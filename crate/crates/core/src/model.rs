//! Model parameters, phase regions and constant-of-motion sectors.
//!
//! The intensive Hamiltonian is
//!
//! ```text
//! H = Λ/N − (Δ/N) J_z + γ/(N√N) (a† J₋ + a J₊),   Λ = a†a + J_z,
//! ```
//!
//! with energies in units of the field frequency and `Δ = 1 − ω_A`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("atom count must be at least 1")]
    NoAtoms,
    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },
    #[error("lambda = {lambda} has the wrong parity for j = {j}")]
    ParityMismatch { lambda: Lambda, j: Lambda },
    #[error("lambda = {lambda} lies below -j = -{j}")]
    BelowLowestSector { lambda: Lambda, j: Lambda },
    #[error("critical point undefined at gamma = 0, omega_A = 0")]
    DegenerateCorner,
    #[error("zeta is undefined at gamma = 0")]
    ZeroCoupling,
}

/// An integer or half-integer, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Lambda(i64);

impl Lambda {
    pub const fn from_twice(twice: i64) -> Self {
        Lambda(twice)
    }

    pub const fn from_int(value: i64) -> Self {
        Lambda(2 * value)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// Step by `k` whole units.
    pub const fn shift(self, k: i64) -> Self {
        Lambda(self.0 + 2 * k)
    }

    pub const fn neg(self) -> Self {
        Lambda(-self.0)
    }

    /// Whole units from `other` up to `self`, if they share parity.
    pub fn units_above(self, other: Lambda) -> Option<i64> {
        let d = self.0 - other.0;
        (d % 2 == 0).then_some(d / 2)
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Physical inputs: atom count, detuning and coupling (both dimensionless).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    n_atoms: u32,
    coupling: f64,
    detuning: f64,
}

impl ModelParams {
    pub fn new(n_atoms: u32, detuning: f64, coupling: f64) -> Result<Self, ModelError> {
        if n_atoms == 0 {
            return Err(ModelError::NoAtoms);
        }
        if !detuning.is_finite() {
            return Err(ModelError::NonFinite {
                name: "detuning",
                value: detuning,
            });
        }
        if !coupling.is_finite() {
            return Err(ModelError::NonFinite {
                name: "coupling",
                value: coupling,
            });
        }
        Ok(ModelParams {
            n_atoms,
            coupling,
            detuning,
        })
    }

    /// Builds parameters from the atomic splitting `ω_A` instead of `Δ`.
    pub fn with_omega_a(n_atoms: u32, omega_a: f64, coupling: f64) -> Result<Self, ModelError> {
        if !omega_a.is_finite() {
            return Err(ModelError::NonFinite {
                name: "omega_a",
                value: omega_a,
            });
        }
        Self::new(n_atoms, 1.0 - omega_a, coupling)
    }

    pub fn n_atoms(&self) -> u32 {
        self.n_atoms
    }

    pub fn n(&self) -> f64 {
        self.n_atoms as f64
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn detuning(&self) -> f64 {
        self.detuning
    }

    pub fn omega_a(&self) -> f64 {
        1.0 - self.detuning
    }

    /// Total pseudo-spin `j = N/2`.
    pub fn j(&self) -> Lambda {
        Lambda::from_twice(self.n_atoms as i64)
    }

    /// `2j = N` as an integer.
    pub fn two_j(&self) -> u64 {
        self.n_atoms as u64
    }

    /// Lowest admissible constant of motion, `-j`.
    pub fn lambda_min(&self) -> Lambda {
        self.j().neg()
    }

    pub fn with_coupling(&self, coupling: f64) -> Result<Self, ModelError> {
        Self::new(self.n_atoms, self.detuning, coupling)
    }

    pub fn with_detuning(&self, detuning: f64) -> Result<Self, ModelError> {
        Self::new(self.n_atoms, detuning, self.coupling)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PhaseRegion {
    /// `ω_A > γ²`: no photons, all atoms down.
    NorthPole,
    /// `ω_A < −γ²`: no photons, all atoms up.
    SouthPole,
    /// `|ω_A| ≤ γ²`.
    Parallels,
}

impl PhaseRegion {
    pub fn is_pole(self) -> bool {
        !matches!(self, PhaseRegion::Parallels)
    }
}

/// Semiclassical minimum of the energy surface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub theta_c: f64,
    pub phi_c: f64,
    pub q_c: f64,
    pub p_c: f64,
    pub e0_per_particle: f64,
    pub lambda_c: f64,
}

pub fn classify_region(params: &ModelParams) -> PhaseRegion {
    let omega_a = params.omega_a();
    let g2 = params.coupling() * params.coupling();
    if g2 == 0.0 {
        // diagonal Hamiltonian; ω_A = 0 falls back to the lowest sector
        return if omega_a < 0.0 {
            PhaseRegion::SouthPole
        } else {
            PhaseRegion::NorthPole
        };
    }
    if omega_a > g2 {
        PhaseRegion::NorthPole
    } else if omega_a < -g2 {
        PhaseRegion::SouthPole
    } else {
        PhaseRegion::Parallels
    }
}

pub fn critical_point(params: &ModelParams) -> Result<CriticalPoint, ModelError> {
    let omega_a = params.omega_a();
    let gamma = params.coupling();
    let j = params.j().value();
    if gamma == 0.0 && omega_a == 0.0 {
        return Err(ModelError::DegenerateCorner);
    }
    let (theta_c, e0_per_particle, lambda_c) = match classify_region(params) {
        PhaseRegion::NorthPole => (0.0, -omega_a / 2.0, -j),
        PhaseRegion::SouthPole => (std::f64::consts::PI, omega_a / 2.0, j),
        PhaseRegion::Parallels => {
            let g2 = gamma * gamma;
            let g4 = g2 * g2;
            (
                (omega_a / g2).clamp(-1.0, 1.0).acos(),
                -(omega_a * omega_a + g4) / (4.0 * g2),
                j * (-omega_a * (omega_a + 2.0) + g4) / (2.0 * g2),
            )
        }
    };
    let phi_c: f64 = 0.0;
    let r = j.sqrt() * gamma * theta_c.sin();
    Ok(CriticalPoint {
        theta_c,
        phi_c,
        q_c: -r * phi_c.cos(),
        p_c: r * phi_c.sin(),
        e0_per_particle,
        lambda_c,
    })
}

/// `ζ = −(√N γ / 2)(1 + ω_A/γ²)`.
pub fn zeta(params: &ModelParams) -> Result<f64, ModelError> {
    let gamma = params.coupling();
    if gamma == 0.0 {
        return Err(ModelError::ZeroCoupling);
    }
    Ok(-(params.n().sqrt() * gamma / 2.0) * (1.0 + params.omega_a() / (gamma * gamma)))
}

/// `η = ζ²`.
pub fn eta(params: &ModelParams) -> Result<f64, ModelError> {
    zeta(params).map(|z| z * z)
}

/// Basis `|ν⟩ ⊗ |j, λ−ν⟩` of one eigenspace of Λ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectorBasis {
    pub lambda: Lambda,
    pub two_j: u64,
    pub nu_min: u64,
    pub nu_max: u64,
}

impl SectorBasis {
    pub fn dimension(&self) -> usize {
        (self.nu_max - self.nu_min + 1) as usize
    }

    /// Photon number at offset `k`.
    pub fn nu(&self, k: usize) -> u64 {
        self.nu_min + k as u64
    }

    /// Twice the magnetic quantum number `m = λ − ν` at offset `k`.
    pub fn twice_m(&self, k: usize) -> i64 {
        self.lambda.twice() - 2 * self.nu(k) as i64
    }

    /// Offset of photon number `nu`, if it belongs to the sector.
    pub fn offset_of(&self, nu: u64) -> Option<usize> {
        (self.nu_min..=self.nu_max)
            .contains(&nu)
            .then(|| (nu - self.nu_min) as usize)
    }

    pub fn nus(&self) -> impl Iterator<Item = u64> {
        self.nu_min..=self.nu_max
    }

    /// `j(j+1) − m(m−1)` at offset `k`: squared matrix element of `J₋`.
    pub fn lowering_weight(&self, k: usize) -> f64 {
        let tj = self.two_j as f64;
        let tm = self.twice_m(k) as f64;
        // (j + m)(j − m + 1) in terms of twice-values
        (tj + tm) / 2.0 * ((tj - tm) / 2.0 + 1.0)
    }
}

pub fn sector_basis(params: &ModelParams, lambda: Lambda) -> Result<SectorBasis, ModelError> {
    let j = params.j();
    let Some(above) = lambda.units_above(j.neg()) else {
        return Err(ModelError::ParityMismatch { lambda, j });
    };
    if above < 0 {
        return Err(ModelError::BelowLowestSector { lambda, j });
    }
    // λ + j and λ − j are whole numbers once parity matches
    let lambda_plus_j = above as u64;
    let nu_min = lambda_plus_j.saturating_sub(params.two_j());
    Ok(SectorBasis {
        lambda,
        two_j: params.two_j(),
        nu_min,
        nu_max: lambda_plus_j,
    })
}
