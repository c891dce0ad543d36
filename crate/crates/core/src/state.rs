//! Pure states restricted to a single constant-of-motion sector.

use serde::{Deserialize, Serialize};

use crate::model::{Lambda, SectorBasis};

/// Real amplitudes `c_ν` over the basis of one Λ sector.
///
/// Both the projected state and the exact ground state are carried in this
/// form, so observables, entropies and fidelities share one code path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectorState {
    pub basis: SectorBasis,
    pub coefficients: Vec<f64>,
}

impl SectorState {
    pub fn new(basis: SectorBasis, coefficients: Vec<f64>) -> Self {
        debug_assert_eq!(basis.dimension(), coefficients.len());
        SectorState { basis, coefficients }
    }

    pub fn lambda(&self) -> Lambda {
        self.basis.lambda
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coefficients.iter().map(|c| c * c).sum()
    }

    /// Photon-number probabilities `|c_ν|²`.
    pub fn probabilities(&self) -> Vec<f64> {
        self.coefficients.iter().map(|c| c * c).collect()
    }

    /// Iterator over `(ν, c_ν)`.
    pub fn amplitudes(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.basis.nus().zip(self.coefficients.iter().copied())
    }
}

/// Von Neumann entropy (natural log) of a diagonal reduced density matrix.
pub fn shannon_entropy(probabilities: &[f64]) -> f64 {
    let s: f64 = probabilities.iter().filter(|&&p| p > 0.0).map(|&p| -p * p.ln()).sum();
    s.max(0.0)
}
