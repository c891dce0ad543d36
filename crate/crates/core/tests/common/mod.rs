//! Independent reference computations shared by the integration tests.
//!
//! Nothing here calls into the closed forms under test: weights are summed
//! term by term, matrices are assembled densely from angular-momentum
//! matrix elements and diagonalized with nalgebra.

#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};
use tcm_lab::model::{Lambda, ModelParams};

/// `ln n!` by direct summation.
pub fn ln_factorial(n: u64) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// `ln C(n, k)`, `−∞` outside `0 ≤ k ≤ n`.
pub fn ln_binomial(n: u64, k: i64) -> f64 {
    if k < 0 || k as u64 > n {
        return f64::NEG_INFINITY;
    }
    ln_factorial(n) - ln_factorial(k as u64) - ln_factorial(n - k as u64)
}

/// Photon-number weights of the coherent state `|ζ}` projected onto λ.
///
/// The field factor contributes `ζ^{2ν}/ν!` and the spin factor
/// `C(2j, j+m)` with `m = λ − ν`. Returns `(ln Y, ν_min, P_ν)`.
pub fn brute_photon_distribution(params: &ModelParams, lambda: Lambda) -> (f64, u64, Vec<f64>) {
    let two_j = params.two_j();
    let lpj = (lambda.twice() + two_j as i64) / 2;
    assert!(lpj >= 0, "λ below −j");
    let nu_min = (lpj - two_j as i64).max(0) as u64;
    let nu_max = lpj as u64;
    let gamma = params.coupling();
    let zeta = -(params.n().sqrt() * gamma / 2.0) * (1.0 + params.omega_a() / (gamma * gamma));
    let eta = zeta * zeta;
    let log_w: Vec<f64> = (nu_min..=nu_max)
        .map(|nu| nu as f64 * eta.ln() - ln_factorial(nu) + ln_binomial(two_j, lpj - nu as i64))
        .collect();
    let peak = log_w.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let total: f64 = log_w.iter().map(|w| (w - peak).exp()).sum();
    let log_y = peak + total.ln();
    let probs = log_w.iter().map(|w| (w - log_y).exp()).collect();
    (log_y, nu_min, probs)
}

/// `(⟨ν⟩, ⟨(ν − ⟨ν⟩)²⟩)` of a distribution starting at `ν_min`.
pub fn moments(nu_min: u64, probs: &[f64]) -> (f64, f64) {
    let mean: f64 = probs
        .iter()
        .enumerate()
        .map(|(i, p)| (nu_min + i as u64) as f64 * p)
        .sum();
    let var = probs
        .iter()
        .enumerate()
        .map(|(i, p)| ((nu_min + i as u64) as f64 - mean).powi(2) * p)
        .sum();
    (mean, var)
}

/// `⟨j, m−1| J₋ |j, m⟩` with `j`, `m` given as twice their value.
pub fn j_minus(two_j: i64, two_m: i64) -> f64 {
    let (j, m) = (two_j as f64 / 2.0, two_m as f64 / 2.0);
    (j * (j + 1.0) - m * (m - 1.0)).max(0.0).sqrt()
}

/// Dense matrix of `H` in sector λ, rows ordered by ascending photon number.
pub fn dense_sector_matrix(params: &ModelParams, lambda: Lambda) -> DMatrix<f64> {
    let two_j = params.two_j() as i64;
    let lpj = (lambda.twice() + two_j) / 2;
    let nu_min = (lpj - two_j).max(0);
    let dim = (lpj - nu_min + 1) as usize;
    let n = params.n();
    let (delta, gamma) = (params.detuning(), params.coupling());
    let mut h = DMatrix::zeros(dim, dim);
    for r in 0..dim {
        let nu = nu_min + r as i64;
        let two_m = lambda.twice() - 2 * nu;
        h[(r, r)] = (lambda.value() - delta * two_m as f64 / 2.0) / n;
        if r + 1 < dim {
            // a† J₋ : |ν, m⟩ → |ν+1, m−1⟩
            let v = gamma / (n * n.sqrt()) * ((nu + 1) as f64).sqrt() * j_minus(two_j, two_m);
            h[(r + 1, r)] = v;
            h[(r, r + 1)] = v;
        }
    }
    h
}

pub fn sorted_eigenvalues(m: DMatrix<f64>) -> Vec<f64> {
    let mut values: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

/// Ground-state energy per particle of the full Hamiltonian on the product
/// space of a truncated Fock space (`0..=cutoff` photons) and the `j = N/2`
/// spin multiplet. No use is made of the constant of motion.
pub fn full_space_ground_energy(params: &ModelParams, cutoff: usize) -> f64 {
    let two_j = params.two_j() as i64;
    let spin_dim = (two_j + 1) as usize;
    let fock_dim = cutoff + 1;
    let mut a = DMatrix::<f64>::zeros(fock_dim, fock_dim);
    for k in 1..fock_dim {
        a[(k - 1, k)] = (k as f64).sqrt();
    }
    let number = a.transpose() * &a;
    // spin basis ordered m = j, j−1, …, −j
    let mut jz = DMatrix::<f64>::zeros(spin_dim, spin_dim);
    let mut jm = DMatrix::<f64>::zeros(spin_dim, spin_dim);
    for i in 0..spin_dim {
        let two_m = two_j - 2 * i as i64;
        jz[(i, i)] = two_m as f64 / 2.0;
        if i + 1 < spin_dim {
            jm[(i + 1, i)] = j_minus(two_j, two_m);
        }
    }
    let jp = jm.transpose();
    let id_f = DMatrix::<f64>::identity(fock_dim, fock_dim);
    let id_s = DMatrix::<f64>::identity(spin_dim, spin_dim);
    let n = params.n();
    let (delta, gamma) = (params.detuning(), params.coupling());
    let constant = number.kronecker(&id_s) + id_f.kronecker(&jz);
    let h = constant / n - id_f.kronecker(&jz) * (delta / n)
        + (a.transpose().kronecker(&jm) + a.kronecker(&jp)) * (gamma / (n * n.sqrt()));
    sorted_eigenvalues(h)[0]
}

pub fn relative_error(value: f64, reference: f64) -> f64 {
    (value - reference).abs() / reference.abs().max(f64::MIN_POSITIVE)
}
